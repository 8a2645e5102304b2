//! The icosian ring `I`, an `o`-order of rank 4 in `H(K)`.
//!
//! `I` is spanned over `o` by
//! `g₀ = (1,0,0,0)`, `g₁ = (0,1,0,0)`, `g₂ = ½(1,1,1,1)`, `g₃ = ½(1-τ,τ,0,1)`.
//! Its fixed `Z`-basis is `(g₀, g₁, g₂, g₃, τg₀, τg₁, τg₂, τg₃)`, so an
//! icosian with `o`-coordinates `cₐ = xₐ + yₐτ` has `Z`-coordinates
//! `(x₀, x₁, x₂, x₃, y₀, y₁, y₂, y₃)`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use num_integer::Roots;
use serde::{Deserialize, Serialize};

use crate::error::{CslError, Result};
use crate::hnf;
use crate::quat::Quat;
use crate::ring::{exact_isqrt, gcd_o, KNum, OInt, Rat};
use crate::shortvec::{quadratic_value, ShortVectors};

/// `o`-coordinates with respect to `g₀..g₃`.
pub type Coords = [OInt; 4];
/// `Z`-coordinates with respect to the fixed basis of `I`.
pub type ZCoords = [i64; 8];

pub fn coords_to_z(c: &Coords) -> ZCoords {
    [c[0].a, c[1].a, c[2].a, c[3].a, c[0].b, c[1].b, c[2].b, c[3].b]
}

pub fn z_to_coords(z: &ZCoords) -> Coords {
    [
        OInt::new(z[0], z[4]),
        OInt::new(z[1], z[5]),
        OInt::new(z[2], z[6]),
        OInt::new(z[3], z[7]),
    ]
}

/// Coordinates of the `j`-th element of the fixed `Z`-basis.
pub fn z_basis_coords(j: usize) -> Coords {
    let mut c = [OInt::ZERO; 4];
    c[j % 4] = if j < 4 { OInt::ONE } else { OInt::TAU };
    c
}

pub(crate) struct Tables {
    pub gens: [Quat; 4],
    /// `coords = components · inv_basis`
    inv_basis: [[KNum; 4]; 4],
    /// `o`-coordinates of `gₐ g_b`
    mul: [[Coords; 4]; 4],
    /// `nr(gₐ)`
    nr_diag: [OInt; 4],
    /// `tr(gₐ ḡ_b)` for `a < b`
    nr_cross: [[OInt; 4]; 4],
    /// twist in `Z`-coordinates, row convention `z ↦ z·T`
    pub twist: [[i64; 8]; 8],
    /// Gram matrix of `x ↦ 2(nr(x) + nr(x)')` on the `Z`-basis; the
    /// undoubled form has half-integral off-diagonal entries
    pub trace_gram: Vec<Vec<i128>>,
}

fn half(a: i128, b: i128) -> KNum {
    KNum::new(Rat::new(a, 2), Rat::new(b, 2))
}

pub fn generators() -> [Quat; 4] {
    [
        Quat::from_pairs([(1, 0), (0, 0), (0, 0), (0, 0)]),
        Quat::from_pairs([(0, 0), (1, 0), (0, 0), (0, 0)]),
        Quat::new(half(1, 0), half(1, 0), half(1, 0), half(1, 0)),
        Quat::new(half(1, -1), half(0, 1), KNum::zero(), half(1, 0)),
    ]
}

fn invert_k(m: &[[KNum; 4]; 4]) -> [[KNum; 4]; 4] {
    let mut a: Vec<Vec<KNum>> = m.iter().map(|r| r.to_vec()).collect();
    let mut inv: Vec<Vec<KNum>> = (0..4)
        .map(|i| (0..4).map(|j| if i == j { KNum::one() } else { KNum::zero() }).collect())
        .collect();
    for col in 0..4 {
        let p = (col..4).find(|&r| !a[r][col].is_zero()).expect("basis matrix is invertible");
        a.swap(col, p);
        inv.swap(col, p);
        let pinv = a[col][col].inverse().expect("nonzero pivot");
        for j in 0..4 {
            a[col][j] = &a[col][j] * &pinv;
            inv[col][j] = &inv[col][j] * &pinv;
        }
        for r in 0..4 {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..4 {
                    a[r][j] = &a[r][j] - &(&f * &a[col][j]);
                    inv[r][j] = &inv[r][j] - &(&f * &inv[col][j]);
                }
            }
        }
    }
    std::array::from_fn(|i| std::array::from_fn(|j| inv[i][j].clone()))
}

fn quat_to_coords_with(inv: &[[KNum; 4]; 4], q: &Quat) -> [KNum; 4] {
    let comps = q.components();
    std::array::from_fn(|j| {
        (0..4).fold(KNum::zero(), |acc, i| &acc + &(comps[i] * &inv[i][j]))
    })
}

fn integral_coords(k: &[KNum; 4]) -> Option<Coords> {
    Some([k[0].to_oint()?, k[1].to_oint()?, k[2].to_oint()?, k[3].to_oint()?])
}

fn build_tables() -> Tables {
    let gens = generators();
    let rows: [[KNum; 4]; 4] =
        std::array::from_fn(|i| std::array::from_fn(|j| gens[i].components()[j].clone()));
    let inv_basis = invert_k(&rows);
    let to_coords = |q: &Quat| -> Coords {
        integral_coords(&quat_to_coords_with(&inv_basis, q)).expect("element of I")
    };
    let mul = std::array::from_fn(|a| std::array::from_fn(|b| to_coords(&(&gens[a] * &gens[b]))));
    let nr_diag = std::array::from_fn(|a| gens[a].nr().to_oint().expect("integral"));
    let nr_cross = std::array::from_fn(|a| {
        std::array::from_fn(|b| (&gens[a] * &gens[b].conj()).tr().to_oint().expect("integral"))
    });
    let basis_quat = |j: usize| -> Quat {
        if j < 4 {
            gens[j].clone()
        } else {
            gens[j - 4].scale(&KNum::tau())
        }
    };
    let twist = std::array::from_fn(|j| coords_to_z(&to_coords(&basis_quat(j).twist())));
    let trace_gram = (0..8)
        .map(|i| {
            (0..8)
                .map(|j| {
                    let ip = basis_quat(i).inner(&basis_quat(j));
                    let t = ip.trace() * Rat::from_integer(2);
                    assert!(t.is_integer(), "doubled trace form is integral on I");
                    t.to_integer()
                })
                .collect()
        })
        .collect();
    Tables {
        gens,
        inv_basis,
        mul,
        nr_diag,
        nr_cross,
        twist,
        trace_gram,
    }
}

pub(crate) fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(build_tables)
}

/// Product in `o`-coordinates.
pub fn mul_coords(x: &Coords, y: &Coords) -> Coords {
    let t = tables();
    let mut out = [OInt::ZERO; 4];
    for a in 0..4 {
        if x[a].is_zero() {
            continue;
        }
        for b in 0..4 {
            if y[b].is_zero() {
                continue;
            }
            let s = x[a] * y[b];
            for (o, m) in out.iter_mut().zip(&t.mul[a][b]) {
                *o = *o + s * *m;
            }
        }
    }
    out
}

/// Reduced norm in `o`-coordinates.
pub fn nr_coords(c: &Coords) -> OInt {
    let t = tables();
    let mut acc = OInt::ZERO;
    for a in 0..4 {
        acc = acc + c[a] * c[a] * t.nr_diag[a];
        for b in a + 1..4 {
            acc = acc + c[a] * c[b] * t.nr_cross[a][b];
        }
    }
    acc
}

/// Twist in `Z`-coordinates.
pub fn twist_z(z: &ZCoords) -> ZCoords {
    let t = &tables().twist;
    std::array::from_fn(|j| (0..8).map(|i| z[i] * t[i][j]).sum())
}

fn coords_to_quat(c: &Coords) -> Quat {
    let gens = &tables().gens;
    (0..4).fold(Quat::default(), |acc, a| &acc + &gens[a].scale(&c[a].to_knum()))
}

/// An element of the icosian ring together with its `o`-coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Icosian {
    q: Quat,
    coords: Coords,
}

impl PartialOrd for Icosian {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Icosian {
    /// Lexicographic order of the `Z`-coordinates.
    fn cmp(&self, other: &Self) -> Ordering {
        self.zcoords().cmp(&other.zcoords())
    }
}

impl Icosian {
    /// Membership test: `Some` iff `q ∈ I`.
    pub fn from_quat(q: &Quat) -> Option<Icosian> {
        let k = quat_to_coords_with(&tables().inv_basis, q);
        integral_coords(&k).map(|coords| Icosian { q: q.clone(), coords })
    }

    pub fn from_coords(coords: Coords) -> Icosian {
        Icosian {
            q: coords_to_quat(&coords),
            coords,
        }
    }

    pub fn from_zcoords(z: &ZCoords) -> Icosian {
        Icosian::from_coords(z_to_coords(z))
    }

    pub fn from_oint(x: OInt) -> Icosian {
        Icosian::from_coords([x, OInt::ZERO, OInt::ZERO, OInt::ZERO])
    }

    pub fn one() -> Icosian {
        Icosian::from_oint(OInt::ONE)
    }

    /// The `j`-th element of the fixed `Z`-basis.
    pub fn z_basis(j: usize) -> Icosian {
        Icosian::from_coords(z_basis_coords(j))
    }

    pub fn quat(&self) -> &Quat {
        &self.q
    }

    pub fn coords(&self) -> &Coords {
        &self.coords
    }

    pub fn zcoords(&self) -> ZCoords {
        coords_to_z(&self.coords)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(OInt::is_zero)
    }

    pub fn nr(&self) -> OInt {
        nr_coords(&self.coords)
    }

    pub fn tr(&self) -> OInt {
        self.q.tr().to_oint().expect("icosians have integral trace")
    }

    pub fn mul(&self, other: &Icosian) -> Icosian {
        Icosian::from_coords(mul_coords(&self.coords, &other.coords))
    }

    pub fn scale(&self, s: OInt) -> Icosian {
        Icosian::from_coords(self.coords.map(|c| c * s))
    }

    pub fn neg(&self) -> Icosian {
        self.scale(-OInt::ONE)
    }

    pub fn conj(&self) -> Icosian {
        Icosian::from_quat(&self.q.conj()).expect("I is closed under conjugation")
    }

    pub fn twist(&self) -> Icosian {
        Icosian::from_zcoords(&twist_z(&self.zcoords()))
    }

    /// Inverse in `H(K)`, returned only when it lies in `I`.
    pub fn inverse_in_i(&self) -> Option<Icosian> {
        Icosian::from_quat(&self.q.inverse().ok()?)
    }

    /// `gcd` of the four `o`-coordinates, in canonical associate form.
    pub fn content(&self) -> Result<OInt> {
        if self.is_zero() {
            return Err(CslError::ZeroInput("content"));
        }
        let mut g = OInt::ZERO;
        for c in &self.coords {
            if !c.is_zero() {
                g = if g.is_zero() { c.normal()? } else { gcd_o(&g, c)? };
            }
        }
        Ok(g)
    }

    /// `αp ∈ I` with `α ∈ K` forces `α ∈ o`.
    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.content()?.is_unit())
    }

    /// The primitive part `p / content(p)` and the content.
    pub fn primitive_part(&self) -> Result<(Icosian, OInt)> {
        let g = self.content()?;
        let coords = self.coords.map(|c| c.div_exact(&g).expect("content divides coordinates"));
        Ok((Icosian::from_coords(coords), g))
    }

    /// `N(nr(q))` is a perfect square.
    pub fn is_admissible(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(CslError::ZeroInput("is_admissible"));
        }
        Ok(exact_isqrt(self.nr().abs_norm() as i128).is_some())
    }

    /// `den(q) = |q q̃| = √N(nr q)` for primitive admissible `q`.
    pub fn den(&self) -> Result<u64> {
        if !self.is_primitive()? {
            return Err(CslError::NotPrimitive(self.to_string()));
        }
        exact_isqrt(self.nr().abs_norm() as i128)
            .map(|d| d as u64)
            .ok_or_else(|| CslError::NotAdmissible(self.nr().abs_norm().to_string()))
    }

    /// The extension `q_α = α q` with `α = √(lcm(nr q, nr q') / nr q)`.
    pub fn extension(&self) -> Result<(Icosian, OInt)> {
        if !self.is_primitive()? {
            return Err(CslError::NotPrimitive(self.to_string()));
        }
        if !self.is_admissible()? {
            return Err(CslError::NotAdmissible(self.nr().abs_norm().to_string()));
        }
        let m = self.nr();
        let l = crate::ring::lcm_o(&m, &m.conj())?;
        let ratio = l.div_exact(&m).ok_or_else(|| {
            CslError::Inconsistent(format!("lcm {l} not divisible by nr {m}"))
        })?;
        let alpha = ratio
            .sqrt()
            .ok_or_else(|| CslError::Inconsistent(format!("{ratio} has no square root in o")))?;
        Ok((self.scale(alpha), alpha))
    }

    /// `q` is invertible in `I`, i.e. `nr(q)` is a unit of `o`.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.nr().is_unit()
    }
}

impl fmt::Display for Icosian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.q.fmt(f)
    }
}

#[derive(Serialize, Deserialize)]
struct IcosianJson {
    quat: Quat,
    coords: Vec<OInt>,
}

impl Serialize for Icosian {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IcosianJson {
            quat: self.q.clone(),
            coords: self.coords.to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Icosian {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let raw = IcosianJson::deserialize(d)?;
        let ico = Icosian::from_quat(&raw.quat)
            .ok_or_else(|| D::Error::custom(format!("{} is not an icosian", raw.quat)))?;
        if raw.coords.as_slice() != ico.coords.as_slice() {
            return Err(D::Error::custom("coordinates do not match the quaternion"));
        }
        Ok(ico)
    }
}

// ---------------------------------------------------------------------------
// Units
// ---------------------------------------------------------------------------

/// The 120 units of reduced norm 1 (the binary icosahedral group).
#[derive(Clone, Debug)]
pub struct UnitGroupI {
    elements: Vec<Coords>,
}

impl UnitGroupI {
    fn generate() -> UnitGroupI {
        let seeds: Vec<Coords> = (0..4)
            .map(z_basis_coords)
            .filter(|c| nr_coords(c) == OInt::ONE)
            .collect();
        let mut seen: BTreeSet<ZCoords> = seeds.iter().map(coords_to_z).collect();
        let mut frontier = seeds.clone();
        while let Some(x) = frontier.pop() {
            for s in &seeds {
                let y = mul_coords(&x, s);
                if seen.insert(coords_to_z(&y)) {
                    frontier.push(y);
                }
            }
        }
        UnitGroupI {
            elements: seen.iter().map(z_to_coords).collect(),
        }
    }

    pub fn elements(&self) -> &[Coords] {
        &self.elements
    }

    pub fn icosians(&self) -> Vec<Icosian> {
        self.elements.iter().map(|c| Icosian::from_coords(*c)).collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

pub fn unit_group() -> &'static UnitGroupI {
    static U: OnceLock<UnitGroupI> = OnceLock::new();
    U.get_or_init(UnitGroupI::generate)
}

/// Smallest `Z`-coordinate vector in the orbit `{ x·u : nr(u) = 1 }`.
pub fn right_orbit_min(x: &Coords) -> ZCoords {
    unit_group()
        .elements()
        .iter()
        .map(|u| coords_to_z(&mul_coords(x, u)))
        .min()
        .expect("nonempty unit group")
}

/// `rI = sI`, i.e. `s⁻¹r` is a unit of `I`.
pub fn same_right_ideal(r: &Icosian, s: &Icosian) -> Result<bool> {
    if r.is_zero() || s.is_zero() {
        return Err(CslError::ZeroInput("same_right_ideal"));
    }
    let quotient = &s.quat().inverse()? * r.quat();
    Ok(Icosian::from_quat(&quotient).is_some_and(|u| u.is_unit()))
}

// ---------------------------------------------------------------------------
// Rank-8 modules
// ---------------------------------------------------------------------------

/// A `Z`-submodule of `I`, stored as a row Hermite basis in the fixed `Z`-basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rank8Module {
    hnf: Vec<Vec<i128>>,
}

impl Rank8Module {
    pub fn from_rows(rows: &[Vec<i128>]) -> Result<Rank8Module> {
        Ok(Rank8Module {
            hnf: hnf::hermite(rows)?,
        })
    }

    pub fn full() -> Rank8Module {
        Rank8Module {
            hnf: (0..8)
                .map(|i| (0..8).map(|j| i128::from(i == j)).collect())
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.hnf.len()
    }

    pub fn basis(&self) -> &[Vec<i128>] {
        &self.hnf
    }

    /// `[I : M]` for a full-rank module.
    pub fn index(&self) -> Option<i128> {
        (self.rank() == 8).then(|| hnf::diagonal_product(&self.hnf))
    }

    pub fn contains(&self, z: &ZCoords) -> bool {
        let v: Vec<i128> = z.iter().map(|&x| x as i128).collect();
        hnf::solve_upper(&self.hnf, &v).is_some()
    }

    pub fn sum(&self, other: &Rank8Module) -> Result<Rank8Module> {
        Ok(Rank8Module {
            hnf: hnf::sum(&self.hnf, &other.hnf)?,
        })
    }

    pub fn elements(&self) -> impl Iterator<Item = Icosian> + '_ {
        self.hnf.iter().map(|r| {
            let z: ZCoords = std::array::from_fn(|j| r[j] as i64);
            Icosian::from_zcoords(&z)
        })
    }

    /// `M·I ⊆ M`, checked on basis elements.
    pub fn is_right_ideal(&self) -> bool {
        self.elements()
            .all(|b| (0..8).all(|j| self.contains(&coords_to_z(&mul_coords(b.coords(), &z_basis_coords(j))))))
    }

    pub fn is_left_ideal(&self) -> bool {
        self.elements()
            .all(|b| (0..8).all(|j| self.contains(&coords_to_z(&mul_coords(&z_basis_coords(j), b.coords())))))
    }

    /// Gram matrix of the doubled trace form on this module's basis.
    pub fn trace_gram(&self) -> Vec<Vec<i128>> {
        let g = &tables().trace_gram;
        let h = &self.hnf;
        let hg: Vec<Vec<i128>> = h
            .iter()
            .map(|r| (0..8).map(|j| (0..8).map(|k| r[k] * g[k][j]).sum()).collect())
            .collect();
        h.iter()
            .map(|ri| hg.iter().map(|rj| (0..8).map(|k| rj[k] * ri[k]).sum()).collect())
            .collect()
    }
}

fn ideal_rows(gens: &[Icosian], right: bool) -> Result<Vec<Vec<i128>>> {
    if gens.iter().all(Icosian::is_zero) {
        return Err(CslError::ZeroInput("ideal generators"));
    }
    let mut rows = Vec::with_capacity(gens.len() * 8);
    for g in gens {
        for j in 0..8 {
            let e = z_basis_coords(j);
            let p = if right {
                mul_coords(g.coords(), &e)
            } else {
                mul_coords(&e, g.coords())
            };
            rows.push(coords_to_z(&p).iter().map(|&x| x as i128).collect());
        }
    }
    Ok(rows)
}

/// The right ideal `Σ gᵢ I`.
pub fn right_ideal(gens: &[Icosian]) -> Result<Rank8Module> {
    let m = Rank8Module::from_rows(&ideal_rows(gens, true)?)?;
    if !m.is_right_ideal() {
        return Err(CslError::Inconsistent("right ideal is not closed under I".into()));
    }
    Ok(m)
}

/// The left ideal `Σ I gᵢ`.
pub fn left_ideal(gens: &[Icosian]) -> Result<Rank8Module> {
    let m = Rank8Module::from_rows(&ideal_rows(gens, false)?)?;
    if !m.is_left_ideal() {
        return Err(CslError::Inconsistent("left ideal is not closed under I".into()));
    }
    Ok(m)
}

/// A generator of a principal right ideal: among the elements of least trace
/// norm whose reduced norm has the right absolute norm, the one with
/// lexicographically smallest `Z`-coordinates and positive leading entry.
pub fn principal_generator(module: &Rank8Module) -> Result<Icosian> {
    let index = module
        .index()
        .ok_or(CslError::RankDeficient { expected: 8, found: module.rank() })?;
    let target = exact_isqrt(index).ok_or_else(|| {
        CslError::Inconsistent(format!("ideal index {index} is not a square"))
    })?;
    // a generator with balanced norm ν has ν + ν' ≤ √(5·N(ν)); the form is doubled
    let bound = Roots::sqrt(&(20 * target));
    let sv = ShortVectors::new(&module.trace_gram())?;
    let h = module.basis();
    let mut best: Option<(i128, ZCoords)> = None;
    sv.for_each(bound, u64::MAX, |y, q| {
        if q == 0 {
            return;
        }
        let y128: Vec<i128> = y.iter().map(|&v| v as i128).collect();
        let x = hnf::row_times(&y128, h).expect("small module coordinates");
        let z: ZCoords = std::array::from_fn(|j| x[j] as i64);
        if z.iter().find(|&&v| v != 0).is_some_and(|&v| v < 0) {
            return;
        }
        if nr_coords(&z_to_coords(&z)).abs_norm() as i128 != target {
            return;
        }
        let better = match &best {
            None => true,
            Some((bq, bz)) => (q, z) < (*bq, *bz),
        };
        if better {
            best = Some((q, z));
        }
    })?;
    let (_, z) = best.ok_or_else(|| {
        CslError::Inconsistent("no generator found for a right ideal of I".into())
    })?;
    debug_assert_eq!(
        quadratic_value(&tables().trace_gram, &z),
        best.map(|b| b.0).unwrap_or_default()
    );
    Ok(Icosian::from_zcoords(&z))
}

/// Greatest left common divisor `d` with `dI = pI + βI`.
pub fn glcd(p: &Icosian, beta: OInt) -> Result<Icosian> {
    if p.is_zero() || beta.is_zero() {
        return Err(CslError::ZeroInput("glcd"));
    }
    let module = right_ideal(&[p.clone(), Icosian::from_oint(beta)])?;
    principal_generator(&module)
}

/// Equality of left divisors up to right units: `d₁I = d₂I`.
pub fn glcd_equal(d1: &Icosian, d2: &Icosian) -> Result<bool> {
    same_right_ideal(d1, d2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Quat {
        s.parse().unwrap()
    }

    fn ico(s: &str) -> Icosian {
        Icosian::from_quat(&q(s)).expect("member of I")
    }

    #[test]
    fn membership() {
        let r = ico("(t,2*t,0,0)");
        assert_eq!(Icosian::from_coords(*r.coords()).quat(), r.quat());
        assert_eq!(
            *ico("(1/2,1/2,1/2,1/2)").coords(),
            [OInt::ZERO, OInt::ZERO, OInt::ONE, OInt::ZERO]
        );
        assert!(Icosian::from_quat(&q("(1/2,0,0,0)")).is_none());
    }

    #[test]
    fn primitivity() {
        let r = ico("(t,2*t,0,0)");
        assert!(r.is_primitive().unwrap());
        assert!(!r.scale(OInt::new(2, 0)).is_primitive().unwrap());
        assert!(Icosian::one().is_primitive().unwrap());
        assert!(Icosian::from_oint(OInt::ZERO).is_primitive().is_err());
        // τ·r is primitive too, since τ is a unit
        assert!(r.scale(OInt::TAU).is_primitive().unwrap());
    }

    #[test]
    fn admissibility_and_den() {
        let r = ico("(t,2*t,0,0)");
        assert!(r.is_admissible().unwrap());
        assert_eq!(r.den().unwrap(), 5);
        assert_eq!(Icosian::one().den().unwrap(), 1);
        let t = ico("(t,0,0,0)");
        assert!(t.is_admissible().unwrap());
        assert_eq!(t.primitive_part().unwrap().0.den().unwrap(), 1);
        // nr = 2 + τ has N = 5
        let x = ico("(1,t,0,0)");
        assert!(!x.is_admissible().unwrap());
        assert!(x.den().is_err());
    }

    #[test]
    fn extension_examples() {
        let r = ico("(t,2*t,0,0)");
        let (ra, alpha) = r.extension().unwrap();
        assert_eq!(alpha, OInt::new(-1, 1));
        assert_eq!(ra.quat(), &q("(1,2,0,0)"));
        assert_eq!(ra.nr(), OInt::from_int(5));

        let (one, a1) = Icosian::one().extension().unwrap();
        assert_eq!((one, a1), (Icosian::one(), OInt::ONE));

        let s = ico("(1+t,t,t,1)");
        let (sa, alpha) = s.extension().unwrap();
        assert_eq!(alpha, OInt::new(-1, 1));
        assert_eq!(sa.nr(), OInt::from_int(5));
        assert_eq!(sa.quat(), &q("(t,1,1,-1+t)"));

        // α for the twisted element is the conjugate of α, up to sign
        let (_, at) = r.twist().extension().unwrap();
        assert_eq!(at * at, alpha.conj() * alpha.conj());
    }

    #[test]
    fn units() {
        assert!(ico("(0,1,0,0)").is_unit());
        assert!(ico("(1/2,1/2,1/2,1/2)").is_unit());
        assert!(!ico("(t,2*t,0,0)").is_unit());
        let g = unit_group();
        assert_eq!(g.len(), 120);
        let set: BTreeSet<ZCoords> = g.elements().iter().map(coords_to_z).collect();
        for x in g.elements() {
            assert_eq!(nr_coords(x), OInt::ONE);
            for y in g.elements() {
                assert!(set.contains(&coords_to_z(&mul_coords(x, y))));
            }
            let inv = Icosian::from_coords(*x).inverse_in_i().unwrap();
            assert!(set.contains(&inv.zcoords()));
        }
    }

    #[test]
    fn twist_preserves_i() {
        for j in 0..8 {
            let e = Icosian::z_basis(j);
            let t = Icosian::from_quat(&e.quat().twist()).expect("twist stays in I");
            assert_eq!(t, e.twist());
        }
    }

    #[test]
    fn i_is_a_ring() {
        for a in 0..4 {
            for b in 0..4 {
                let p = &generators()[a] * &generators()[b];
                assert!(Icosian::from_quat(&p).is_some());
            }
        }
    }

    #[test]
    fn coordinate_norm_matches_quaternion_norm() {
        let x = Icosian::from_coords([
            OInt::new(2, -1),
            OInt::new(0, 3),
            OInt::new(-1, 1),
            OInt::new(4, 0),
        ]);
        assert_eq!(x.nr().to_knum(), x.quat().nr());
        let y = Icosian::from_coords([OInt::new(1, 1), OInt::ZERO, OInt::new(0, -2), OInt::ONE]);
        assert_eq!(x.mul(&y).quat(), &(x.quat() * y.quat()));
        let z = x.zcoords();
        let tr = x.nr().trace();
        assert_eq!(quadratic_value(&tables().trace_gram, &z), 2 * tr);
    }

    #[test]
    fn right_ideal_and_index() {
        assert_eq!(right_ideal(&[Icosian::one()]).unwrap(), Rank8Module::full());
        let r = ico("(t,2*t,0,0)");
        let m = right_ideal(&[r.clone()]).unwrap();
        assert_eq!(m.index(), Some(625));
        assert_eq!(right_ideal(&[r, Icosian::one()]).unwrap(), Rank8Module::full());
        assert!(right_ideal(&[Icosian::from_oint(OInt::ZERO)]).is_err());
    }

    #[test]
    fn same_right_ideal_examples() {
        let r = ico("(t,2*t,0,0)");
        let s = ico("(1+t,t,t,1)");
        for u in unit_group().icosians().iter().step_by(7) {
            assert!(same_right_ideal(&r, &r.mul(u)).unwrap());
        }
        assert!(!same_right_ideal(&r, &s).unwrap());
        assert!(same_right_ideal(&r, &r.scale(OInt::TAU)).unwrap());
    }

    #[test]
    fn glcd_examples() {
        let r = ico("(t,2*t,0,0)");
        let d = glcd(&r, OInt::ONE).unwrap();
        assert!(d.is_unit());
        assert!(glcd_equal(&d, &Icosian::one()).unwrap());

        let beta = OInt::from_int(3);
        let u = ico("(1/2,1/2,1/2,1/2)");
        let d = glcd(&Icosian::from_oint(beta).mul(&u), beta).unwrap();
        assert!(glcd_equal(&d, &Icosian::from_oint(beta)).unwrap());

        let five = OInt::from_int(5);
        let d = glcd(&r, five).unwrap();
        let ideal = right_ideal(&[r.clone(), Icosian::from_oint(five)]).unwrap();
        assert_eq!(right_ideal(&[d.clone()]).unwrap(), ideal);
        // d left-divides r and 5
        let dinv = d.quat().inverse().unwrap();
        assert!(Icosian::from_quat(&(&dinv * r.quat())).is_some());
        assert!(Icosian::from_quat(&dinv.scale(&five.to_knum())).is_some());
        assert_eq!(d.nr().abs_norm() as i128, exact_isqrt(ideal.index().unwrap()).unwrap());
    }

    #[test]
    fn glcd_equality_examples() {
        let d = ico("(1,1,0,1)");
        let u = ico("(1/2,1/2,1/2,1/2)");
        assert!(glcd_equal(&d, &d.mul(&u)).unwrap());
        assert!(!glcd_equal(&Icosian::one(), &ico("(t,2*t,0,0)")).unwrap());
        assert!(glcd_equal(&ico("(2,0,0,0)"), &ico("(0,2,0,0)")).unwrap());
    }
}
