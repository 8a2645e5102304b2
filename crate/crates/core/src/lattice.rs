//! The lattice `L ≅ A₄` inside `H(K)` and its finite-index sublattices.
//!
//! `L` is the `Z`-span of
//! `b₁ = (1,0,0,0)`, `b₂ = ½(-1,1,1,1)`, `b₃ = (0,-1,0,0)`, `b₄ = ½(0,1,τ-1,-τ)`,
//! which is also the twist-fixed part of the icosian ring. Sublattices are
//! stored as integer Hermite bases in these coordinates.

use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{CslError, Result};
use crate::hnf;
use crate::icosian::{tables, Icosian, Rank8Module, ZCoords};
use crate::quat::Quat;
use crate::ring::{KNum, Rat};

pub type RatVec4 = [Rat; 4];

struct LData {
    basis: [Quat; 4],
    gram: [[Rat; 4]; 4],
    gram_inv: [[Rat; 4]; 4],
}

fn half(a: i128, b: i128) -> KNum {
    KNum::new(Rat::new(a, 2), Rat::new(b, 2))
}

fn invert_rat(m: &[[Rat; 4]; 4]) -> Option<[[Rat; 4]; 4]> {
    let mut a = *m;
    let mut inv = [[Rat::zero(); 4]; 4];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = Rat::one();
    }
    for col in 0..4 {
        let p = (col..4).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        inv.swap(col, p);
        let pinv = a[col][col].recip();
        for j in 0..4 {
            a[col][j] *= pinv;
            inv[col][j] *= pinv;
        }
        for r in 0..4 {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for j in 0..4 {
                    let (ac, ic) = (a[col][j], inv[col][j]);
                    a[r][j] -= f * ac;
                    inv[r][j] -= f * ic;
                }
            }
        }
    }
    Some(inv)
}

pub fn det_rat(m: &[[Rat; 4]; 4]) -> Rat {
    let mut a = *m;
    let mut det = Rat::one();
    for col in 0..4 {
        let Some(p) = (col..4).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if p != col {
            a.swap(col, p);
            det = -det;
        }
        det *= a[col][col];
        for r in col + 1..4 {
            let f = a[r][col] / a[col][col];
            for j in col..4 {
                let v = a[col][j];
                a[r][j] -= f * v;
            }
        }
    }
    det
}

/// Real inner product of two vectors whose inner product must be rational.
fn rational_inner(x: &Quat, y: &Quat) -> Option<Rat> {
    x.inner(y).to_rational()
}

fn l_data() -> &'static LData {
    static D: OnceLock<LData> = OnceLock::new();
    D.get_or_init(|| {
        let z = KNum::zero;
        let basis = [
            Quat::from_pairs([(1, 0), (0, 0), (0, 0), (0, 0)]),
            Quat::new(half(-1, 0), half(1, 0), half(1, 0), half(1, 0)),
            Quat::new(z(), KNum::from(-1), z(), z()),
            Quat::new(z(), half(1, 0), half(-1, 1), half(0, -1)),
        ];
        let gram = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                rational_inner(&basis[i], &basis[j]).expect("inner products on L are rational")
            })
        });
        let gram_inv = invert_rat(&gram).expect("Gram matrix of L is invertible");
        LData {
            basis,
            gram,
            gram_inv,
        }
    })
}

/// The basis `b₁..b₄` of `L`.
pub fn l_basis() -> &'static [Quat; 4] {
    &l_data().basis
}

/// Gram matrix of `L`, which equals `½·Cartan(A₄)`.
pub fn gram_l() -> [[Rat; 4]; 4] {
    l_data().gram
}

/// `½·Cartan(A₄)`: 1 on the diagonal, -½ between neighbours.
pub fn half_cartan_a4() -> [[Rat; 4]; 4] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| match i.abs_diff(j) {
            0 => Rat::one(),
            1 => Rat::new(-1, 2),
            _ => Rat::zero(),
        })
    })
}

/// Rational coordinates with respect to `b₁..b₄`, for twist-fixed vectors.
pub fn to_l_coords(x: &Quat) -> Option<RatVec4> {
    if x.twist() != *x {
        return None;
    }
    let d = l_data();
    let ips: Vec<Rat> = d
        .basis
        .iter()
        .map(|b| rational_inner(x, b))
        .collect::<Option<_>>()?;
    let c: RatVec4 =
        std::array::from_fn(|i| (0..4).map(|j| ips[j] * d.gram_inv[j][i]).sum::<Rat>());
    (from_l_coords(&c) == *x).then_some(c)
}

/// Integer coordinates when `x ∈ L`.
pub fn to_l_int(x: &Quat) -> Option<[i64; 4]> {
    let c = to_l_coords(x)?;
    let mut out = [0i64; 4];
    for (o, v) in out.iter_mut().zip(c.iter()) {
        if !v.is_integer() {
            return None;
        }
        *o = i64::try_from(v.to_integer()).ok()?;
    }
    Some(out)
}

pub fn from_l_coords(c: &RatVec4) -> Quat {
    let d = l_data();
    (0..4).fold(Quat::default(), |acc, i| {
        &acc + &d.basis[i].scale(&KNum::from_rat(c[i]))
    })
}

/// Dual basis of `L*` in `L`-coordinates (rows of the inverse Gram matrix).
pub fn dual_l() -> [RatVec4; 4] {
    l_data().gram_inv
}

/// Real inner product of two vectors given in `L`-coordinates.
pub fn l_inner(x: &RatVec4, y: &RatVec4) -> Rat {
    let g = &l_data().gram;
    let mut acc = Rat::zero();
    for i in 0..4 {
        for j in 0..4 {
            acc += x[i] * g[i][j] * y[j];
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// Sublattices
// ---------------------------------------------------------------------------

/// A finite-index sublattice of `L`, as a 4×4 row Hermite basis in `L`-coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SublatticeL {
    hnf: [[i64; 4]; 4],
}

impl SublatticeL {
    /// `L` itself.
    pub fn full() -> SublatticeL {
        SublatticeL::scaled(1)
    }

    /// `kL`.
    pub fn scaled(k: i64) -> SublatticeL {
        let mut hnf = [[0i64; 4]; 4];
        for (i, row) in hnf.iter_mut().enumerate() {
            row[i] = k;
        }
        SublatticeL { hnf }
    }

    /// Canonical basis of the span of integer row vectors.
    pub fn from_int_rows(rows: &[Vec<i128>]) -> Result<SublatticeL> {
        let h = hnf::hermite(rows)?;
        if h.len() != 4 || h.iter().any(|r| r.len() != 4) {
            return Err(CslError::RankDeficient {
                expected: 4,
                found: h.len(),
            });
        }
        let mut out = [[0i64; 4]; 4];
        for (o, r) in out.iter_mut().zip(&h) {
            for (x, v) in o.iter_mut().zip(r) {
                *x = i64::try_from(*v).map_err(|_| CslError::Overflow("SublatticeL"))?;
            }
        }
        Ok(SublatticeL { hnf: out })
    }

    /// Canonical basis from rational row vectors that must be integral.
    pub fn from_rows(rows: &[RatVec4]) -> Result<SublatticeL> {
        let mut int_rows = Vec::with_capacity(rows.len());
        for r in rows {
            if r.iter().any(|x| !x.is_integer()) {
                return Err(CslError::NonInteger);
            }
            int_rows.push(r.iter().map(|x| x.to_integer()).collect());
        }
        SublatticeL::from_int_rows(&int_rows)
    }

    /// Canonical basis of the span of vectors given in Cartesian form.
    pub fn from_quats(vectors: &[Quat]) -> Result<SublatticeL> {
        let rows = vectors
            .iter()
            .map(|v| to_l_coords(v).ok_or_else(|| CslError::NotInLattice(v.to_string())))
            .collect::<Result<Vec<_>>>()?;
        SublatticeL::from_rows(&rows)
    }

    pub fn hnf(&self) -> &[[i64; 4]; 4] {
        &self.hnf
    }

    fn rows128(&self) -> Vec<Vec<i128>> {
        self.hnf.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()
    }

    /// `[L : self]`.
    pub fn index(&self) -> u64 {
        (0..4).map(|i| self.hnf[i][i] as u64).product()
    }

    pub fn contains(&self, v: &[i64; 4]) -> bool {
        let v: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        hnf::solve_upper(&self.rows128(), &v).is_some()
    }

    pub fn intersect(&self, other: &SublatticeL) -> Result<SublatticeL> {
        SublatticeL::from_int_rows(&hnf::intersect(&self.rows128(), &other.rows128())?)
    }

    pub fn sum(&self, other: &SublatticeL) -> Result<SublatticeL> {
        SublatticeL::from_int_rows(&hnf::sum(&self.rows128(), &other.rows128())?)
    }

    /// Basis vectors as quaternions.
    pub fn vectors(&self) -> Vec<Quat> {
        self.hnf
            .iter()
            .map(|r| from_l_coords(&r.map(|x| Rat::from_integer(x as i128))))
            .collect()
    }

    /// Row-major entries.
    pub fn flat(&self) -> Vec<i64> {
        self.hnf.iter().flatten().copied().collect()
    }
}

impl fmt::Display for SublatticeL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .hnf
            .iter()
            .map(|r| format!("[{}, {}, {}, {}]", r[0], r[1], r[2], r[3]))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct SublatticeJson {
    hnf: Vec<i64>,
    index: u64,
}

impl Serialize for SublatticeL {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SublatticeJson {
            hnf: self.flat(),
            index: self.index(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SublatticeL {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let raw = SublatticeJson::deserialize(d)?;
        if raw.hnf.len() != 16 {
            return Err(D::Error::custom("expected 16 matrix entries"));
        }
        let hnf: [[i64; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| raw.hnf[4 * i + j]));
        let diag: i128 = (0..4).map(|i| hnf[i][i] as i128).product();
        if diag != raw.index as i128 {
            return Err(D::Error::custom(format!(
                "diagonal product {diag} does not match declared index {}",
                raw.index
            )));
        }
        let lat = SublatticeL { hnf };
        let canonical = SublatticeL::from_int_rows(&lat.rows128()).map_err(D::Error::custom)?;
        if canonical != lat {
            return Err(D::Error::custom("matrix is not in Hermite normal form"));
        }
        Ok(lat)
    }
}

// ---------------------------------------------------------------------------
// Rational 4×4 matrices
// ---------------------------------------------------------------------------

/// A linear map in `L`-coordinates; column `j` is the image of `b_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix4 {
    pub m: [[Rat; 4]; 4],
}

impl RationalMatrix4 {
    pub fn identity() -> Self {
        RationalMatrix4 {
            m: std::array::from_fn(|i| {
                std::array::from_fn(|j| if i == j { Rat::one() } else { Rat::zero() })
            }),
        }
    }

    /// The matrix of a `Q`-linear map `f` that preserves the span of `L`.
    pub fn from_map<F: Fn(&Quat) -> Quat>(f: F) -> Result<Self> {
        let mut m = [[Rat::zero(); 4]; 4];
        for (j, b) in l_basis().iter().enumerate() {
            let img = f(b);
            let c = to_l_coords(&img).ok_or_else(|| CslError::NotInLattice(img.to_string()))?;
            for i in 0..4 {
                m[i][j] = c[i];
            }
        }
        Ok(RationalMatrix4 { m })
    }

    pub fn mul(&self, other: &RationalMatrix4) -> RationalMatrix4 {
        RationalMatrix4 {
            m: std::array::from_fn(|i| {
                std::array::from_fn(|j| (0..4).map(|k| self.m[i][k] * other.m[k][j]).sum())
            }),
        }
    }

    pub fn transpose(&self) -> RationalMatrix4 {
        RationalMatrix4 {
            m: std::array::from_fn(|i| std::array::from_fn(|j| self.m[j][i])),
        }
    }

    pub fn det(&self) -> Rat {
        det_rat(&self.m)
    }

    /// `Mᵀ G M = G`.
    pub fn is_g_orthogonal(&self) -> bool {
        let g = RationalMatrix4 { m: gram_l() };
        self.transpose().mul(&g).mul(self) == g
    }

    /// Images of the basis vectors, as rows.
    pub fn image_rows(&self) -> [RatVec4; 4] {
        self.transpose().m
    }

    /// Least common denominator of all entries.
    pub fn denominator(&self) -> i128 {
        use num_integer::Integer;
        self.m.iter().flatten().fold(1i128, |acc, x| acc.lcm(x.denom()))
    }
}

impl fmt::Display for RationalMatrix4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .m
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// `L ∩ ML` for a map given in `L`-coordinates with finite coincidence index.
pub fn intersect_with_image(map: &RationalMatrix4) -> Result<SublatticeL> {
    let d = map.denominator();
    let scaled: Vec<Vec<i128>> = map
        .image_rows()
        .iter()
        .map(|r| r.iter().map(|x| (x * Rat::from_integer(d)).to_integer()).collect())
        .collect();
    let d_identity: Vec<Vec<i128>> = (0..4)
        .map(|i| (0..4).map(|j| if i == j { d } else { 0 }).collect())
        .collect();
    let meet = hnf::intersect(&d_identity, &scaled)?;
    let rows: Vec<Vec<i128>> = meet
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    debug_assert_eq!(x % d, 0);
                    x / d
                })
                .collect()
        })
        .collect();
    SublatticeL::from_int_rows(&rows)
}

// ---------------------------------------------------------------------------
// Bridges between I and L
// ---------------------------------------------------------------------------

/// Integer `L`-coordinates of a twist-fixed element of `I`.
pub fn z_to_l(z: &ZCoords) -> Option<[i64; 4]> {
    to_l_int(Icosian::from_zcoords(z).quat())
}

/// `M ∩ span(L)` for a full-rank submodule `M` of `I`, in `L`-coordinates.
pub fn module_to_l(module: &Rank8Module) -> Result<SublatticeL> {
    if module.rank() != 8 {
        return Err(CslError::RankDeficient {
            expected: 8,
            found: module.rank(),
        });
    }
    let t = &tables().twist;
    let h = module.basis();
    // rows of H·(T - 1): the twist defect of each basis element
    let defect: Vec<Vec<i128>> = h
        .iter()
        .map(|r| {
            (0..8)
                .map(|j| (0..8).map(|k| r[k] * t[k][j] as i128).sum::<i128>() - r[j])
                .collect()
        })
        .collect();
    let kernel = hnf::left_kernel(&defect)?;
    if kernel.len() != 4 {
        return Err(CslError::RankDeficient {
            expected: 4,
            found: kernel.len(),
        });
    }
    let rows = kernel
        .iter()
        .map(|y| {
            let x = hnf::row_times(y, h)?;
            let z: ZCoords = std::array::from_fn(|j| x[j] as i64);
            let c = z_to_l(&z).ok_or_else(|| CslError::NotInLattice(format!("{z:?}")))?;
            Ok(c.iter().map(|&v| v as i128).collect())
        })
        .collect::<Result<Vec<Vec<i128>>>>()?;
    SublatticeL::from_int_rows(&rows)
}

/// `L(q) = φ₊(qI)`, spanned by `φ₊(q eⱼ)` over the `Z`-basis of `I`.
pub fn phi_plus_image(q: &Icosian) -> Result<SublatticeL> {
    let rows = (0..8)
        .map(|j| {
            let v = q.mul(&Icosian::z_basis(j)).quat().phi_plus();
            let c = to_l_int(&v).ok_or_else(|| CslError::NotInLattice(v.to_string()))?;
            Ok(c.iter().map(|&x| x as i128).collect())
        })
        .collect::<Result<Vec<Vec<i128>>>>()?;
    SublatticeL::from_int_rows(&rows)
}
