//! Hamilton's quaternions over `K = Q(√5)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CslError, Result};
use crate::ring::KNum;

/// `a + ib + jc + kd` with components in `K`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Quat {
    pub a: KNum,
    pub b: KNum,
    pub c: KNum,
    pub d: KNum,
}

impl Quat {
    pub fn new(a: KNum, b: KNum, c: KNum, d: KNum) -> Self {
        Quat { a, b, c, d }
    }

    /// Quaternion with integer components in the `{1, τ}` basis:
    /// each pair is `(rational part, τ part)`.
    pub fn from_pairs(p: [(i128, i128); 4]) -> Self {
        let k = |(a, b): (i128, i128)| KNum::from_ints(a, b);
        Quat::new(k(p[0]), k(p[1]), k(p[2]), k(p[3]))
    }

    pub fn scalar(x: KNum) -> Self {
        Quat::new(x, KNum::zero(), KNum::zero(), KNum::zero())
    }

    pub fn one() -> Self {
        Quat::scalar(KNum::one())
    }

    pub fn components(&self) -> [&KNum; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn from_components(c: [KNum; 4]) -> Self {
        let [a, b, c, d] = c;
        Quat::new(a, b, c, d)
    }

    pub fn is_zero(&self) -> bool {
        self.components().iter().all(|x| x.is_zero())
    }

    /// `q̄ = (a, -b, -c, -d)`.
    pub fn conj(&self) -> Quat {
        Quat::new(self.a.clone(), -&self.b, -&self.c, -&self.d)
    }

    /// Reduced norm `q q̄ = a² + b² + c² + d²`.
    pub fn nr(&self) -> KNum {
        self.components()
            .iter()
            .fold(KNum::zero(), |acc, x| &acc + &(*x * *x))
    }

    /// Reduced trace `q + q̄ = 2a`.
    pub fn tr(&self) -> KNum {
        &self.a + &self.a
    }

    /// The twist `(a, b, c, d) ↦ (a', b', d', c')`.
    pub fn twist(&self) -> Quat {
        Quat::new(self.a.conj(), self.b.conj(), self.d.conj(), self.c.conj())
    }

    /// `φ₊(x) = x + x̃`.
    pub fn phi_plus(&self) -> Quat {
        self + &self.twist()
    }

    pub fn scale(&self, s: &KNum) -> Quat {
        Quat::new(s * &self.a, s * &self.b, s * &self.c, s * &self.d)
    }

    /// `q⁻¹ = q̄ / nr(q)`.
    pub fn inverse(&self) -> Result<Quat> {
        if self.is_zero() {
            return Err(CslError::ZeroInput("Quat::inverse"));
        }
        Ok(self.conj().scale(&self.nr().inverse()?))
    }

    /// Euclidean inner product `Σ xᵢ yᵢ`, evaluated in `K`.
    pub fn inner(&self, other: &Quat) -> KNum {
        self.components()
            .iter()
            .zip(other.components())
            .fold(KNum::zero(), |acc, (x, y)| &acc + &(*x * y))
    }

    /// Diagnostic float embedding.
    pub fn to_f64(&self) -> [f64; 4] {
        [self.a.to_f64(), self.b.to_f64(), self.c.to_f64(), self.d.to_f64()]
    }
}

impl Add for &Quat {
    type Output = Quat;
    fn add(self, o: &Quat) -> Quat {
        Quat::new(&self.a + &o.a, &self.b + &o.b, &self.c + &o.c, &self.d + &o.d)
    }
}

impl Sub for &Quat {
    type Output = Quat;
    fn sub(self, o: &Quat) -> Quat {
        Quat::new(&self.a - &o.a, &self.b - &o.b, &self.c - &o.c, &self.d - &o.d)
    }
}

impl Neg for &Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        Quat::new(-&self.a, -&self.b, -&self.c, -&self.d)
    }
}

impl Mul for &Quat {
    type Output = Quat;
    fn mul(self, o: &Quat) -> Quat {
        let (a1, b1, c1, d1) = (&self.a, &self.b, &self.c, &self.d);
        let (a2, b2, c2, d2) = (&o.a, &o.b, &o.c, &o.d);
        Quat::new(
            &(&(a1 * a2) - &(b1 * b2)) - &(&(c1 * c2) + &(d1 * d2)),
            &(&(a1 * b2) + &(b1 * a2)) + &(&(c1 * d2) - &(d1 * c2)),
            &(&(a1 * c2) - &(b1 * d2)) + &(&(c1 * a2) + &(d1 * b2)),
            &(&(a1 * d2) + &(b1 * c2)) + &(&(d1 * a2) - &(c1 * b2)),
        )
    }
}

impl Add for Quat {
    type Output = Quat;
    fn add(self, o: Quat) -> Quat {
        &self + &o
    }
}

impl Sub for Quat {
    type Output = Quat;
    fn sub(self, o: Quat) -> Quat {
        &self - &o
    }
}

impl Mul for Quat {
    type Output = Quat;
    fn mul(self, o: Quat) -> Quat {
        &self * &o
    }
}

impl Neg for Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        -&self
    }
}

impl fmt::Display for Quat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for Quat {
    type Err = CslError;

    /// Parses `(a, b, c, d)`; the parentheses are optional.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t);
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 4 {
            return Err(CslError::Parse(format!(
                "expected 4 comma-separated components, got {}",
                parts.len()
            )));
        }
        let mut comps = parts.into_iter().map(str::parse::<KNum>);
        Ok(Quat::new(
            comps.next().unwrap()?,
            comps.next().unwrap()?,
            comps.next().unwrap()?,
            comps.next().unwrap()?,
        ))
    }
}

impl Serialize for Quat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Quat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Rat;
    use proptest::prelude::*;

    fn q(s: &str) -> Quat {
        s.parse().unwrap()
    }

    #[test]
    fn conjugation() {
        assert_eq!(q("(1,0,0,0)").conj(), q("(1,0,0,0)"));
        assert_eq!(q("(0,1,0,0)").conj(), q("(0,-1,0,0)"));
        assert_eq!(q("(t,2*t,0,0)").conj(), q("(t,-2*t,0,0)"));
    }

    #[test]
    fn norm_and_trace() {
        assert_eq!(q("(t,2*t,0,0)").nr(), KNum::from_ints(5, 5));
        assert_eq!(q("(1+t,t,t,1)").nr(), KNum::from_ints(5, 5));
        assert_eq!(q("(1,1,1,1)").tr(), KNum::from(2));
    }

    #[test]
    fn twist_examples() {
        assert_eq!(q("(t,2*t,0,0)").twist(), q("(1-t,2-2*t,0,0)"));
        assert_eq!(q("(0,0,1,0)").twist(), q("(0,0,0,1)"));
        let x = q("(1/2-t, 3*t, -1/3, 7/2+t)");
        assert_eq!(x.twist().twist(), x);
    }

    #[test]
    fn phi_plus_examples() {
        assert_eq!(q("(1,0,0,0)").phi_plus(), q("(2,0,0,0)"));
        assert_eq!(q("(t,0,0,0)").phi_plus(), q("(1,0,0,0)"));
        assert_eq!(q("(0,0,1,0)").phi_plus(), q("(0,0,1,1)"));
    }

    #[test]
    fn hamilton_products() {
        assert_eq!(q("(0,1,0,0)") * q("(0,0,1,0)"), q("(0,0,0,1)"));
        assert_eq!(q("(0,0,1,0)") * q("(0,1,0,0)"), q("(0,0,0,-1)"));
        let (i, j, k) = (q("(0,1,0,0)"), q("(0,0,1,0)"), q("(0,0,0,1)"));
        let minus_one = q("(-1,0,0,0)");
        assert_eq!(&i * &i, minus_one);
        assert_eq!(&j * &j, minus_one);
        assert_eq!(&k * &k, minus_one);
        assert_eq!(&(&i * &j) * &k, minus_one);
    }

    #[test]
    fn inverse_example() {
        let r = q("(t,2*t,0,0)");
        let inv = r.inverse().unwrap();
        let expected = q("(t,-2*t,0,0)").scale(&KNum::from_ints(5, 5).inverse().unwrap());
        assert_eq!(inv, expected);
        assert_eq!(&r * &inv, Quat::one());
        assert!(Quat::default().inverse().is_err());
    }

    fn knum() -> impl Strategy<Value = KNum> {
        (-9i128..9, 1i128..4, -9i128..9, 1i128..4)
            .prop_map(|(a, da, b, db)| KNum::new(Rat::new(a, da), Rat::new(b, db)))
    }

    fn quat() -> impl Strategy<Value = Quat> {
        (knum(), knum(), knum(), knum()).prop_map(|(a, b, c, d)| Quat::new(a, b, c, d))
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(p in quat(), r in quat()) {
            prop_assert_eq!((&p * &r).nr(), &p.nr() * &r.nr());
        }

        #[test]
        fn twist_is_anti_homomorphism(p in quat(), r in quat()) {
            prop_assert_eq!((&p * &r).twist(), &r.twist() * &p.twist());
            prop_assert_eq!(p.twist().nr(), p.nr().conj());
            prop_assert_eq!(p.twist().twist(), p.clone());
        }

        #[test]
        fn conj_is_anti_homomorphism(p in quat(), r in quat()) {
            prop_assert_eq!((&p * &r).conj(), &r.conj() * &p.conj());
        }

        #[test]
        fn phi_plus_is_twist_fixed(x in quat()) {
            let y = x.phi_plus();
            prop_assert_eq!(y.twist(), y);
        }

        #[test]
        fn multiplication_is_associative(a in quat(), b in quat(), c in quat()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn inverse_is_two_sided(x in quat()) {
            prop_assume!(!x.is_zero());
            let inv = x.inverse().unwrap();
            prop_assert_eq!(&x * &inv, Quat::one());
            prop_assert_eq!(&inv * &x, Quat::one());
        }
    }
}
