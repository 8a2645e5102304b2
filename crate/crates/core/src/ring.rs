//! Exact arithmetic in `K = Q(√5)` and in its ring of integers `o = Z[τ]`.
//!
//! Every element is stored in the basis `{1, τ}` with `τ = (1+√5)/2`, so
//! `τ² = 1 + τ` and the algebraic conjugate is `τ' = 1 - τ`. Real-embedding
//! comparisons are done exactly by comparing `u + v√5` against zero.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::{Integer, Roots};
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CslError, Result};

/// Rational numbers used throughout the crate.
pub type Rat = Ratio<i128>;

/// Sign of the real number `u + v√5`.
pub(crate) fn sign_sqrt5(u: i128, v: i128) -> Ordering {
    match (u.cmp(&0), v.cmp(&0)) {
        (Ordering::Equal, Ordering::Equal) => Ordering::Equal,
        (Ordering::Less | Ordering::Equal, Ordering::Less | Ordering::Equal) => Ordering::Less,
        (Ordering::Greater | Ordering::Equal, Ordering::Greater | Ordering::Equal) => {
            Ordering::Greater
        }
        (Ordering::Greater, Ordering::Less) => (u * u).cmp(&(5 * v * v)),
        (Ordering::Less, Ordering::Greater) => (5 * v * v).cmp(&(u * u)),
    }
}

/// Integer square root of a nonnegative integer when it is a perfect square.
pub fn exact_isqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

fn rat_int(x: &Rat) -> Option<i128> {
    x.is_integer().then(|| x.to_integer())
}

fn round_nearest(x: &Rat) -> i128 {
    (x + Rat::new(1, 2)).floor().to_integer()
}

// ---------------------------------------------------------------------------
// OInt
// ---------------------------------------------------------------------------

/// An element `a + bτ` of the ring of integers `o = Z[τ]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OInt {
    pub a: i64,
    pub b: i64,
}

/// How a rational prime decomposes in `o`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Splitting {
    Ramified,
    Split,
    Inert,
}

impl Splitting {
    pub fn of_rational_prime(p: u64) -> Splitting {
        match p % 5 {
            0 => Splitting::Ramified,
            1 | 4 => Splitting::Split,
            _ => Splitting::Inert,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFactor {
    pub prime: OInt,
    pub rational_prime: u64,
    pub exponent: u32,
    pub splitting: Splitting,
}

/// Factorisation `x = unit · ∏ primeᵉ` in `o`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OFactorization {
    pub unit: OInt,
    pub factors: Vec<PrimeFactor>,
}

impl OFactorization {
    /// Multiply the factorisation back out.
    pub fn expand(&self) -> OInt {
        self.factors
            .iter()
            .fold(self.unit, |acc, f| acc * f.prime.pow(f.exponent))
    }
}

impl OInt {
    pub const ZERO: OInt = OInt { a: 0, b: 0 };
    pub const ONE: OInt = OInt { a: 1, b: 0 };
    pub const TAU: OInt = OInt { a: 0, b: 1 };
    /// `√5 = 2τ - 1`, the ramified prime.
    pub const SQRT5: OInt = OInt { a: -1, b: 2 };

    pub const fn new(a: i64, b: i64) -> Self {
        OInt { a, b }
    }

    pub const fn from_int(a: i64) -> Self {
        OInt { a, b: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn is_rational(&self) -> bool {
        self.b == 0
    }

    /// Algebraic conjugate, `√5 ↦ -√5`.
    pub fn conj(&self) -> OInt {
        OInt::new(self.a + self.b, -self.b)
    }

    /// `x · x'`, the signed field norm.
    pub fn norm_signed(&self) -> i128 {
        let (a, b) = (self.a as i128, self.b as i128);
        a * a + a * b - b * b
    }

    /// Absolute norm `N(x) = |x x'|`.
    pub fn abs_norm(&self) -> u128 {
        self.norm_signed().unsigned_abs()
    }

    /// Field trace `x + x'`.
    pub fn trace(&self) -> i128 {
        2 * self.a as i128 + self.b as i128
    }

    pub fn is_unit(&self) -> bool {
        self.abs_norm() == 1
    }

    /// Sign of `x` under the embedding `τ ↦ (1+√5)/2`.
    pub fn real_sign(&self) -> Ordering {
        let (a, b) = (self.a as i128, self.b as i128);
        sign_sqrt5(2 * a + b, b)
    }

    pub fn is_totally_positive(&self) -> bool {
        self.real_sign() == Ordering::Greater && self.conj().real_sign() == Ordering::Greater
    }

    /// `τᵏ` for any integer `k` (`τ⁻¹ = τ - 1`).
    pub fn tau_pow(k: i64) -> OInt {
        let base = if k >= 0 { OInt::TAU } else { OInt::new(-1, 1) };
        base.pow(k.unsigned_abs() as u32)
    }

    pub fn pow(&self, e: u32) -> OInt {
        let mut acc = OInt::ONE;
        let mut base = *self;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn to_knum(&self) -> KNum {
        KNum::from(*self)
    }

    /// Exact quotient `self / d` when it lies in `o`.
    pub fn div_exact(&self, d: &OInt) -> Option<OInt> {
        if d.is_zero() {
            return None;
        }
        let n = d.norm_signed();
        let num = *self * d.conj();
        let (a, b) = (num.a as i128, num.b as i128);
        (a % n == 0 && b % n == 0).then(|| OInt::new((a / n) as i64, (b / n) as i64))
    }

    pub fn divides(&self, x: &OInt) -> bool {
        if self.is_zero() {
            return x.is_zero();
        }
        x.div_exact(self).is_some()
    }

    /// Division with nearest-integer rounding of the exact quotient.
    fn div_round(&self, d: &OInt) -> (OInt, OInt) {
        let n = d.norm_signed();
        let num = *self * d.conj();
        let qa = round_nearest(&Rat::new(num.a as i128, n));
        let qb = round_nearest(&Rat::new(num.b as i128, n));
        let q = OInt::new(qa as i64, qb as i64);
        (q, *self - q * *d)
    }

    /// Canonical associate: `self = sign · τᵏ · normal` with `normal`
    /// totally positive and `τ⁻² ≤ normal/normal' < τ²`.
    pub fn unit_normalize(&self) -> Result<(OInt, i64, i8)> {
        if self.is_zero() {
            return Err(CslError::ZeroInput("unit_normalize"));
        }
        let sign: i8 = if self.real_sign() == Ordering::Greater { 1 } else { -1 };
        let mut n = if sign > 0 { *self } else { -*self };
        let mut k = 0i64;
        if n.conj().real_sign() == Ordering::Less {
            n = n * OInt::TAU;
            k -= 1;
        }
        let tau2 = OInt::tau_pow(2);
        let tau_m2 = OInt::tau_pow(-2);
        // n ≥ τ² n'  →  shift down by τ²
        while (n - tau2 * n.conj()).real_sign() != Ordering::Less {
            n = n * tau_m2;
            k += 2;
        }
        // n < τ⁻² n'  →  shift up by τ²
        while (n - tau_m2 * n.conj()).real_sign() == Ordering::Less {
            n = n * tau2;
            k -= 2;
        }
        Ok((n, k, sign))
    }

    /// The canonical associate alone.
    pub fn normal(&self) -> Result<OInt> {
        self.unit_normalize().map(|(n, _, _)| n)
    }

    /// Exact square root in `o`, choosing the root that is positive under
    /// the real embedding.
    pub fn sqrt(&self) -> Option<OInt> {
        if self.is_zero() {
            return Some(OInt::ZERO);
        }
        let s = exact_isqrt(self.norm_signed())?;
        let tr = self.trace();
        let mut best: Option<OInt> = None;
        for n in [s, -s] {
            let Some(t) = exact_isqrt(tr + 2 * n) else {
                continue;
            };
            for t in [t, -t] {
                let disc = t * t - 4 * n;
                if disc < 0 || disc % 5 != 0 {
                    continue;
                }
                let Some(d) = exact_isqrt(disc / 5) else {
                    continue;
                };
                for d in [d, -d] {
                    if (t - d) % 2 != 0 {
                        continue;
                    }
                    let y = OInt::new(((t - d) / 2) as i64, d as i64);
                    if y * y == *self && y.real_sign() == Ordering::Greater {
                        best = Some(y);
                    }
                }
            }
        }
        best
    }
}

/// Greatest common divisor in `o`, in canonical associate form.
pub fn gcd_o(x: &OInt, y: &OInt) -> Result<OInt> {
    if x.is_zero() && y.is_zero() {
        return Err(CslError::ZeroInput("gcd_o"));
    }
    let (mut u, mut v) = (*x, *y);
    while !v.is_zero() {
        let (_, r) = u.div_round(&v);
        debug_assert!(r.abs_norm() < v.abs_norm());
        u = v;
        v = r;
    }
    u.normal()
}

/// Least common multiple in `o`, in canonical associate form.
pub fn lcm_o(x: &OInt, y: &OInt) -> Result<OInt> {
    if x.is_zero() || y.is_zero() {
        return Err(CslError::ZeroInput("lcm_o"));
    }
    let g = gcd_o(x, y)?;
    let y_over_g = y.div_exact(&g).expect("gcd divides its argument");
    (*x * y_over_g).normal()
}

fn rational_prime_factors(mut n: u128) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p: u128 = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p as u64);
            while n % p == 0 {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n as u64);
    }
    out
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && rational_prime_factors(p as u128) == [p]
}

/// The primes of `o` above the rational prime `p`, in a fixed order.
pub fn primes_above(p: u64) -> Vec<OInt> {
    match Splitting::of_rational_prime(p) {
        Splitting::Ramified => vec![OInt::SQRT5],
        Splitting::Inert => vec![OInt::from_int(p as i64)],
        Splitting::Split => {
            // τ ↦ r (mod p) where r² - r - 1 ≡ 0
            let r = (0..p)
                .find(|r| (r * r + p * p - r - 1) % p == 0)
                .expect("x² - x - 1 has a root modulo a split prime");
            let pi = gcd_o(&OInt::from_int(p as i64), &OInt::new(r as i64, -1))
                .expect("nonzero input");
            let mut v = vec![pi, pi.conj().normal().expect("nonzero")];
            v.sort();
            v
        }
    }
}

/// Factor a nonzero element of `o` into primes.
pub fn factor_o(x: &OInt) -> Result<OFactorization> {
    if x.is_zero() {
        return Err(CslError::ZeroInput("factor_o"));
    }
    let mut rest = *x;
    let mut factors = Vec::new();
    for p in rational_prime_factors(x.abs_norm()) {
        let splitting = Splitting::of_rational_prime(p);
        for prime in primes_above(p) {
            let mut exponent = 0;
            while let Some(q) = rest.div_exact(&prime) {
                rest = q;
                exponent += 1;
            }
            if exponent > 0 {
                factors.push(PrimeFactor {
                    prime,
                    rational_prime: p,
                    exponent,
                    splitting,
                });
            }
        }
    }
    debug_assert!(rest.is_unit());
    Ok(OFactorization {
        unit: rest,
        factors,
    })
}

/// All canonical associates of divisors of `x`.
pub fn divisors_o(x: &OInt) -> Result<Vec<OInt>> {
    let fac = factor_o(x)?;
    let mut divs = vec![OInt::ONE];
    for f in &fac.factors {
        let mut next = Vec::with_capacity(divs.len() * (f.exponent as usize + 1));
        for d in &divs {
            let mut acc = *d;
            for _ in 0..=f.exponent {
                next.push(acc);
                acc = acc * f.prime;
            }
        }
        divs = next;
    }
    let mut out: Vec<OInt> = divs.iter().map(|d| d.normal()).collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

impl Add for OInt {
    type Output = OInt;
    fn add(self, o: OInt) -> OInt {
        OInt::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for OInt {
    type Output = OInt;
    fn sub(self, o: OInt) -> OInt {
        OInt::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for OInt {
    type Output = OInt;
    fn neg(self) -> OInt {
        OInt::new(-self.a, -self.b)
    }
}

impl Mul for OInt {
    type Output = OInt;
    fn mul(self, o: OInt) -> OInt {
        let bd = self.b * o.b;
        OInt::new(self.a * o.a + bd, self.a * o.b + self.b * o.a + bd)
    }
}

impl From<i64> for OInt {
    fn from(a: i64) -> Self {
        OInt::from_int(a)
    }
}

impl fmt::Display for OInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_knum().fmt(f)
    }
}

impl FromStr for OInt {
    type Err = CslError;
    fn from_str(s: &str) -> Result<Self> {
        let k: KNum = s.parse()?;
        k.to_oint()
            .ok_or_else(|| CslError::Parse(format!("{s:?} is not an integer of Q(√5)")))
    }
}

// ---------------------------------------------------------------------------
// KNum
// ---------------------------------------------------------------------------

/// An element `a + bτ` of `K = Q(√5)` with reduced rational components.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct KNum {
    pub a: Rat,
    pub b: Rat,
}

impl KNum {
    pub fn new(a: Rat, b: Rat) -> Self {
        KNum { a, b }
    }

    pub fn from_ints(a: i128, b: i128) -> Self {
        KNum::new(Rat::from_integer(a), Rat::from_integer(b))
    }

    pub fn from_rat(a: Rat) -> Self {
        KNum::new(a, Rat::zero())
    }

    pub fn zero() -> Self {
        KNum::default()
    }

    pub fn one() -> Self {
        KNum::from_ints(1, 0)
    }

    pub fn tau() -> Self {
        KNum::from_ints(0, 1)
    }

    pub fn half() -> Self {
        KNum::from_rat(Rat::new(1, 2))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> KNum {
        KNum::new(self.a + self.b, -self.b)
    }

    /// `x · x'` as a rational number.
    pub fn norm_signed(&self) -> Rat {
        self.a * self.a + self.a * self.b - self.b * self.b
    }

    pub fn abs_norm(&self) -> Rat {
        self.norm_signed().abs()
    }

    pub fn trace(&self) -> Rat {
        self.a * Rat::from_integer(2) + self.b
    }

    pub fn scale(&self, r: &Rat) -> KNum {
        KNum::new(self.a * r, self.b * r)
    }

    pub fn inverse(&self) -> Result<KNum> {
        if self.is_zero() {
            return Err(CslError::ZeroInput("KNum::inverse"));
        }
        let n = self.norm_signed();
        Ok(self.conj().scale(&n.recip()))
    }

    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    pub fn to_oint(&self) -> Option<OInt> {
        let a = rat_int(&self.a)?;
        let b = rat_int(&self.b)?;
        Some(OInt::new(i64::try_from(a).ok()?, i64::try_from(b).ok()?))
    }

    pub fn to_rational(&self) -> Option<Rat> {
        self.is_rational().then_some(self.a)
    }

    /// Sign under the embedding `τ ↦ (1+√5)/2`.
    pub fn real_sign(&self) -> Ordering {
        let d = self.a.denom().lcm(self.b.denom());
        let a = (self.a * Rat::from_integer(d)).to_integer();
        let b = (self.b * Rat::from_integer(d)).to_integer();
        sign_sqrt5(2 * a + b, b)
    }

    /// Diagnostic float value; never used in exact logic.
    pub fn to_f64(&self) -> f64 {
        let t = (1.0 + 5f64.sqrt()) / 2.0;
        (*self.a.numer() as f64 / *self.a.denom() as f64)
            + (*self.b.numer() as f64 / *self.b.denom() as f64) * t
    }
}

impl From<OInt> for KNum {
    fn from(x: OInt) -> Self {
        KNum::from_ints(x.a as i128, x.b as i128)
    }
}

impl From<i64> for KNum {
    fn from(a: i64) -> Self {
        KNum::from_ints(a as i128, 0)
    }
}

impl Add for &KNum {
    type Output = KNum;
    fn add(self, o: &KNum) -> KNum {
        KNum::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for &KNum {
    type Output = KNum;
    fn sub(self, o: &KNum) -> KNum {
        KNum::new(self.a - o.a, self.b - o.b)
    }
}

impl Mul for &KNum {
    type Output = KNum;
    fn mul(self, o: &KNum) -> KNum {
        let bd = self.b * o.b;
        KNum::new(self.a * o.a + bd, self.a * o.b + self.b * o.a + bd)
    }
}

impl Neg for &KNum {
    type Output = KNum;
    fn neg(self) -> KNum {
        KNum::new(-self.a, -self.b)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for KNum {
            type Output = KNum;
            fn $m(self, o: KNum) -> KNum {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for KNum {
    type Output = KNum;
    fn neg(self) -> KNum {
        -&self
    }
}

fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for KNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tau_term = |b: &Rat| -> String {
            if b.is_one() {
                "t".to_string()
            } else if *b == -Rat::one() {
                "-t".to_string()
            } else {
                format!("{}*t", fmt_rat(b))
            }
        };
        if self.b.is_zero() {
            write!(f, "{}", fmt_rat(&self.a))
        } else if self.a.is_zero() {
            write!(f, "{}", tau_term(&self.b))
        } else if self.b.is_positive() {
            write!(f, "{}+{}", fmt_rat(&self.a), tau_term(&self.b))
        } else {
            write!(f, "{}{}", fmt_rat(&self.a), tau_term(&self.b))
        }
    }
}

fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || CslError::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i128 = p.parse().map_err(|_| bad())?;
            let q: i128 = q.parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn parse_term(term: &str) -> Result<KNum> {
    let (neg, body) = match term.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, term.strip_prefix('+').unwrap_or(term)),
    };
    if body.is_empty() {
        return Err(CslError::Parse(format!("empty term in {term:?}")));
    }
    let value = if body == "t" {
        KNum::tau()
    } else if let Some(coef) = body.strip_suffix("*t") {
        KNum::new(Rat::zero(), parse_rat(coef)?)
    } else if let Some(coef) = body.strip_prefix("t*") {
        KNum::new(Rat::zero(), parse_rat(coef)?)
    } else {
        KNum::from_rat(parse_rat(body)?)
    };
    Ok(if neg { -value } else { value })
}

impl FromStr for KNum {
    type Err = CslError;

    /// Parses sums of terms like `-1/2+3/2*t`, `t`, `2*t`, `1-t`.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '−' => '-',
                'τ' => 't',
                c => c,
            })
            .collect();
        if cleaned.is_empty() {
            return Err(CslError::Parse("empty number".into()));
        }
        let mut total = KNum::zero();
        let mut start = 0;
        let bytes = cleaned.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'/')
            {
                total = &total + &parse_term(&cleaned[start..i])?;
                start = i;
            }
        }
        Ok(total)
    }
}

macro_rules! serde_via_string {
    ($t:ty) => {
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.serialize_str(&self.to_string())
            }
        }
        impl<'de> Deserialize<'de> for $t {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let s = String::deserialize(d)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}
serde_via_string!(OInt);
serde_via_string!(KNum);

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn o(a: i64, b: i64) -> OInt {
        OInt::new(a, b)
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(KNum::tau().conj(), KNum::from_ints(1, -1));
        assert_eq!(KNum::from(5).conj(), KNum::from(5));
        assert_eq!(o(5, 5).conj(), o(10, -5));
    }

    #[test]
    fn absolute_norm_examples() {
        assert_eq!(OInt::TAU.abs_norm(), 1);
        assert_eq!(o(5, 5).abs_norm(), 25);
        assert_eq!(o(2, 0).abs_norm(), 4);
        assert_eq!(KNum::from(o(5, 5)).abs_norm(), Rat::from_integer(25));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_o(&o(5, 5), &o(5, 0)).unwrap(), o(5, 0));
        assert_eq!(gcd_o(&OInt::TAU, &OInt::ONE).unwrap(), OInt::ONE);
        assert_eq!(gcd_o(&o(4, 0), &o(6, 0)).unwrap(), o(2, 0));
        assert!(gcd_o(&OInt::ZERO, &OInt::ZERO).is_err());
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(lcm_o(&o(5, 5), &o(10, -5)).unwrap(), o(5, 0));
        assert_eq!(lcm_o(&o(2, 0), &o(3, 0)).unwrap(), o(6, 0));
        let x = o(7, -3);
        assert_eq!(lcm_o(&OInt::ONE, &x).unwrap(), x.normal().unwrap());
        assert!(lcm_o(&OInt::ZERO, &x).is_err());
    }

    #[test]
    fn unit_normalize_examples() {
        assert_eq!(o(5, 5).unit_normalize().unwrap(), (o(5, 0), 2, 1));
        assert_eq!(o(-3, 0).unit_normalize().unwrap(), (o(3, 0), 0, -1));
        assert_eq!(OInt::TAU.unit_normalize().unwrap(), (OInt::ONE, 1, 1));
        assert!(OInt::ZERO.unit_normalize().is_err());
    }

    #[test]
    fn sqrt5_normal_form_is_balanced() {
        // the two totally positive associates of √5 have ratios τ² and τ⁻²
        let (n, k, s) = OInt::SQRT5.unit_normalize().unwrap();
        assert_eq!(n, o(3, -1));
        assert_eq!(OInt::tau_pow(k) * n * OInt::from_int(s as i64), OInt::SQRT5);
    }

    #[test]
    fn factor_examples() {
        let f5 = factor_o(&o(5, 0)).unwrap();
        assert_eq!(f5.unit, OInt::ONE);
        assert_eq!(f5.factors.len(), 1);
        assert_eq!(f5.factors[0].prime, o(-1, 2));
        assert_eq!(f5.factors[0].exponent, 2);
        assert_eq!(f5.factors[0].splitting, Splitting::Ramified);

        let f11 = factor_o(&o(11, 0)).unwrap();
        assert_eq!(f11.factors.len(), 2);
        for f in &f11.factors {
            assert_eq!(f.prime.abs_norm(), 11);
            assert_eq!(f.exponent, 1);
            assert_eq!(f.splitting, Splitting::Split);
        }
        assert!(f11.factors[0]
            .prime
            .div_exact(&f11.factors[1].prime)
            .map_or(true, |q| !q.is_unit()));
        assert_eq!(f11.expand(), o(11, 0));

        let f2 = factor_o(&o(2, 0)).unwrap();
        assert_eq!(f2.unit, OInt::ONE);
        assert_eq!(f2.factors[0].prime, o(2, 0));
        assert_eq!(f2.factors[0].splitting, Splitting::Inert);
        assert!(factor_o(&OInt::ZERO).is_err());
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(o(2, 3).sqrt(), Some(o(1, 1)));
        assert_eq!(o(4, 0).sqrt(), Some(o(2, 0)));
        assert_eq!(o(2, 0).sqrt(), None);
        // brute-force oracle over a coefficient box
        for a in -6..=6 {
            for b in -6..=6 {
                let y = o(a, b);
                let sq = y * y;
                let r = sq.sqrt().expect("square has a root");
                assert_eq!(r * r, sq);
            }
        }
    }

    #[test]
    fn text_round_trip() {
        for s in ["-1/2+3/2*t", "t", "-t", "0", "5", "1-t", "2*t", "3/4"] {
            let k: KNum = s.parse().unwrap();
            assert_eq!(k.to_string(), s);
        }
        let k: KNum = " 1 / 2 + t ".parse().unwrap();
        assert_eq!(k, KNum::new(Rat::new(1, 2), Rat::one()));
        assert!("1+".parse::<KNum>().is_err());
        assert!("x".parse::<KNum>().is_err());
        assert!("1/0".parse::<KNum>().is_err());
    }

    fn small() -> impl Strategy<Value = OInt> {
        (-40i64..40, -40i64..40).prop_map(|(a, b)| OInt::new(a, b))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn norm_is_multiplicative(x in small(), y in small()) {
            prop_assert_eq!((x * y).abs_norm(), x.abs_norm() * y.abs_norm());
        }
    }

    proptest! {
        #[test]
        fn conj_is_involutive_homomorphism(x in small(), y in small()) {
            prop_assert_eq!((x + y).conj(), x.conj() + y.conj());
            prop_assert_eq!((x * y).conj(), x.conj() * y.conj());
            prop_assert_eq!(x.conj().conj(), x);
        }

        #[test]
        fn gcd_lcm_laws(x in small(), y in small()) {
            prop_assume!(!x.is_zero() && !y.is_zero());
            let g = gcd_o(&x, &y).unwrap();
            prop_assert!(g.divides(&x) && g.divides(&y));
            let l = lcm_o(&x, &y).unwrap();
            let prod = (g * l).div_exact(&(x * y)).unwrap();
            prop_assert!(prod.is_unit());
        }

        #[test]
        fn normalize_is_idempotent(x in small()) {
            prop_assume!(!x.is_zero());
            let (n, k, s) = x.unit_normalize().unwrap();
            prop_assert_eq!(OInt::from_int(s as i64) * OInt::tau_pow(k) * n, x);
            prop_assert!(n.is_totally_positive());
            prop_assert_eq!(n.unit_normalize().unwrap(), (n, 0, 1));
        }

        #[test]
        fn factorisation_reassembles(x in small()) {
            prop_assume!(!x.is_zero());
            let f = factor_o(&x).unwrap();
            prop_assert_eq!(f.expand(), x);
            prop_assert!(f.unit.is_unit());
            for pf in &f.factors {
                let n = pf.prime.abs_norm();
                let p = pf.rational_prime as u128;
                match pf.splitting {
                    Splitting::Ramified => prop_assert_eq!(n, 5),
                    Splitting::Split => prop_assert_eq!(n, p),
                    Splitting::Inert => prop_assert_eq!(n, p * p),
                }
            }
        }
    }
}
