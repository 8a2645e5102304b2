//! Counting CSLs of `L` by index.
//!
//! `f(n)` is multiplicative with a closed form on prime powers. The census
//! recomputes it by listing one rotation per class `qI` with `Σ(q) = n` and
//! deduplicating the resulting CSLs.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::csl::{criterion_key, csl_checked, csl_intersection, rotation_of};
use crate::error::{CslError, Result};
use crate::icosian::{coords_to_z, right_orbit_min, z_to_coords, Icosian, Rank8Module, ZCoords};
use crate::lattice::SublatticeL;
use crate::ring::{divisors_o, exact_isqrt, is_prime, lcm_o, OInt};
use crate::shortvec::ShortVectors;

fn big(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// `f(p^r)`.
pub fn f_prime_power(p: u64, r: u32) -> Result<u128> {
    if !is_prime(p) {
        return Err(CslError::NotPrime(p));
    }
    if r == 0 {
        return Ok(1);
    }
    let pp = |e: u32| -> BigRational { Pow::pow(big(p), e) };
    let value = if p == 5 {
        big(6) * pp(2 * r - 2)
    } else if p % 5 == 2 || p % 5 == 3 {
        (big(p * p) + big(1)) * pp(2 * r - 2)
    } else {
        let lead = Pow::pow(big(p + 1), 2u32) / (pp(3) - big(1));
        let tail = if r % 2 == 1 {
            big(2) * pp((r - 1) / 2)
        } else {
            big(2) * (pp(2) + big(1)) / big(p + 1) * pp((r - 2) / 2)
        };
        lead * (pp(2 * r + 1) + pp(2 * r - 2) - tail)
    };
    if !value.is_integer() {
        return Err(CslError::NonInteger);
    }
    value.to_integer().to_u128().ok_or(CslError::Overflow("f_prime_power"))
}

fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Number of CSLs of `L` with index `n`.
pub fn f(n: u64) -> u128 {
    factor_u64(n)
        .into_iter()
        .map(|(p, e)| f_prime_power(p, e).expect("prime factor"))
        .product()
}

/// `[f(1), …, f(N)]` computed from the closed form.
pub fn dirichlet_coeffs(count: u64) -> Vec<u128> {
    (1..=count).map(f).collect()
}

/// Power series of a rational function `num/den` in `x`, up to `x^len`.
fn series(num: &[i128], den: &[i128], len: usize) -> Vec<i128> {
    let mut c = vec![0i128; len + 1];
    for k in 0..=len {
        let mut v = num.get(k).copied().unwrap_or(0);
        for j in 1..=k.min(den.len().saturating_sub(1)) {
            v -= den[j] * c[k - j];
        }
        c[k] = v;
    }
    c
}

/// Local factor at `p` as a power series in `x = p^{-s}`.
fn euler_factor(p: u64, len: usize) -> Vec<i128> {
    let p = p as i128;
    match p % 5 {
        0 => series(&[1, 6 - 25], &[1, -25], len),
        2 | 3 => series(&[1, 1], &[1, -p * p], len),
        _ => {
            // (1 - p²x)(1 - p x²)
            let den = [1, -p * p, -p, p * p * p];
            series(&[1, 1 + 2 * p, 2 + p, p], &den, len)
        }
    }
}

/// `[f(1), …, f(N)]` by expanding the Euler product of `Σ f(n) n^{-s}`.
pub fn euler_product_coeffs(count: u64) -> Vec<u128> {
    let n = count as usize;
    let mut a = vec![0i128; n + 1];
    if n == 0 {
        return Vec::new();
    }
    a[1] = 1;
    for p in (2..=count).filter(|&p| is_prime(p)) {
        let mut len = 0;
        let mut pk = 1u64;
        while pk * p <= count {
            pk *= p;
            len += 1;
        }
        let c = euler_factor(p, len);
        let mut next = a.clone();
        for m in 1..=n {
            if a[m] == 0 {
                continue;
            }
            let mut idx = m;
            for ck in c.iter().skip(1) {
                idx *= p as usize;
                if idx > n {
                    break;
                }
                next[idx] += a[m] * ck;
            }
        }
        a = next;
    }
    a[1..].iter().map(|&x| x as u128).collect()
}

/// Totally positive canonical `m ∈ o` with `N(m)` a square and `lcm(m, m') = n`.
pub fn norm_candidates(n: u64) -> Result<Vec<OInt>> {
    let target = OInt::from_int(n as i64);
    let mut out = Vec::new();
    for m in divisors_o(&target)? {
        if exact_isqrt(m.abs_norm() as i128).is_none() {
            continue;
        }
        if lcm_o(&m, &m.conj())? == target {
            out.push(m);
        }
    }
    Ok(out)
}

fn full_trace_gram() -> Vec<Vec<i128>> {
    Rank8Module::full().trace_gram()
}

/// All primitive `q` with `nr(q) = m` that are minimal in their orbit under
/// the 120 units of norm one.
fn rotations_with_norm(m: &OInt, max_nodes: u64) -> Result<Vec<Icosian>> {
    let sv = ShortVectors::new(&full_trace_gram())?;
    let value = 2 * m.trace();
    let mut hits: Vec<ZCoords> = Vec::new();
    sv.for_each(value, max_nodes, |y, q| {
        if q != value {
            return;
        }
        let z: ZCoords = std::array::from_fn(|j| y[j]);
        let c = z_to_coords(&z);
        if crate::icosian::nr_coords(&c) == *m {
            hits.push(z);
        }
    })?;
    let mut reps = Vec::new();
    for z in hits {
        let q = Icosian::from_zcoords(&z);
        if q.is_primitive()? && right_orbit_min(q.coords()) == z {
            reps.push(q);
        }
    }
    Ok(reps)
}

/// One representative per class `qI` of primitive admissible `q` with
/// `Σ(q) = n`, sorted by `Z`-coordinates.
pub fn enumerate_rotations(n: u64, max_nodes: u64) -> Result<Vec<Icosian>> {
    if n == 0 {
        return Err(CslError::ZeroInput("enumerate_rotations"));
    }
    let per_norm = norm_candidates(n)?
        .par_iter()
        .map(|m| rotations_with_norm(m, max_nodes))
        .collect::<Result<Vec<_>>>()?;
    let mut all: Vec<Icosian> = per_norm.into_iter().flatten().collect();
    all.sort();
    Ok(all)
}

/// The class representative of `q`: `q·ε` with `nr` in canonical form and
/// minimal `Z`-coordinates in its orbit.
pub fn class_representative(q: &Icosian) -> Result<Icosian> {
    let (_, k, _) = q.nr().unit_normalize()?;
    // nr(q) = τᵏ·m with k even, since both are totally positive
    let scaled = q.scale(OInt::tau_pow(-k / 2));
    debug_assert_eq!(scaled.nr(), q.nr().normal()?);
    Ok(Icosian::from_zcoords(&right_orbit_min(scaled.coords())))
}

#[derive(Clone, Debug)]
pub struct CensusConfig {
    pub threads: usize,
    pub max_nodes: u64,
    pub max_n: u64,
    /// also check the three CSL constructions and the criterion dedup
    pub verify: bool,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig {
            threads: 1,
            max_nodes: 2_000_000_000,
            max_n: 30,
            verify: false,
        }
    }
}

pub type Pool = rayon::ThreadPool;

/// A worker pool with `threads` threads (at least one).
pub fn pool(threads: usize) -> Result<Pool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| CslError::Inconsistent(format!("thread pool: {e}")))
}

/// Counts for one index `n`.
#[derive(Clone, Debug, Serialize)]
pub struct SigmaCensus {
    pub n: u64,
    pub rotation_classes: usize,
    pub csl_count: usize,
    pub f_formula: u128,
    /// number of classes under the norm/glcd criterion, when verified
    pub criterion_count: Option<usize>,
    pub representatives: Vec<Icosian>,
    pub csls: Vec<SublatticeL>,
}

impl SigmaCensus {
    pub fn matches(&self) -> bool {
        self.csl_count as u128 == self.f_formula
            && self.criterion_count.is_none_or(|c| c == self.csl_count)
    }
}

fn census_inner(n: u64, config: &CensusConfig) -> Result<SigmaCensus> {
    let reps = enumerate_rotations(n, config.max_nodes)?;
    let csls: Vec<SublatticeL> = reps
        .par_iter()
        .map(|q| {
            let rot = rotation_of(q)?;
            if config.verify {
                csl_checked(&rot)
            } else {
                csl_intersection(&rot)
            }
        })
        .collect::<Result<_>>()?;
    let distinct: BTreeSet<SublatticeL> = csls.iter().cloned().collect();
    let criterion_count = if config.verify {
        let keys = reps
            .par_iter()
            .map(|q| criterion_key(q).map(|k| (k.norm, k.divisor.zcoords())))
            .collect::<Result<BTreeSet<_>>>()?;
        Some(keys.len())
    } else {
        None
    };
    let census = SigmaCensus {
        n,
        rotation_classes: reps.len(),
        csl_count: distinct.len(),
        f_formula: f(n),
        criterion_count,
        representatives: reps,
        csls: distinct.into_iter().collect(),
    };
    if !census.matches() {
        return Err(CslError::Inconsistent(format!(
            "census for n = {n}: {} CSLs ({:?} by criterion) but f(n) = {}",
            census.csl_count, census.criterion_count, census.f_formula
        )));
    }
    Ok(census)
}

/// Enumerate, deduplicate and compare against `f(n)`; a mismatch is an error.
pub fn census(n: u64, config: &CensusConfig) -> Result<SigmaCensus> {
    if n == 0 {
        return Err(CslError::ZeroInput("census"));
    }
    if n > config.max_n {
        return Err(CslError::BudgetExceeded(format!(
            "n = {n} exceeds the configured maximum {}",
            config.max_n
        )));
    }
    pool(config.threads)?.install(|| census_inner(n, config))
}

/// Rows `1..=nmax`; stops at the first budget failure and records it.
#[derive(Clone, Debug, Serialize)]
pub struct CensusTable {
    pub rows: Vec<SigmaCensus>,
    pub truncated: Option<String>,
}

pub fn census_table(nmax: u64, config: &CensusConfig) -> Result<CensusTable> {
    let mut rows = Vec::new();
    for n in 1..=nmax {
        match census(n, config) {
            Ok(c) => rows.push(c),
            Err(CslError::BudgetExceeded(msg)) => {
                return Ok(CensusTable {
                    rows,
                    truncated: Some(msg),
                })
            }
            Err(e) => return Err(e),
        }
    }
    Ok(CensusTable {
        rows,
        truncated: None,
    })
}

impl CensusTable {
    /// `n,rotation_classes,csl_count,f_formula,match` with a trailing
    /// `# truncated:` line when the budget stopped the run.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,rotation_classes,csl_count,f_formula,match\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{},{},{},{},{}\n",
                r.n,
                r.rotation_classes,
                r.csl_count,
                r.f_formula,
                r.matches()
            ));
        }
        if let Some(msg) = &self.truncated {
            s.push_str(&format!("# truncated: {msg}\n"));
        }
        s
    }
}

/// The rotation classes for all `n ≤ nmax`, keyed by `Σ`.
pub fn classes_by_sigma(nmax: u64, max_nodes: u64) -> Result<BTreeMap<u64, Vec<Icosian>>> {
    (1..=nmax)
        .map(|n| Ok((n, enumerate_rotations(n, max_nodes)?)))
        .collect()
}

/// `Z`-coordinates of every `q·u`, `u` a norm-one unit.
pub fn right_orbit(q: &Icosian) -> Vec<ZCoords> {
    crate::icosian::unit_group()
        .elements()
        .iter()
        .map(|u| coords_to_z(&crate::icosian::mul_coords(q.coords(), u)))
        .collect()
}
