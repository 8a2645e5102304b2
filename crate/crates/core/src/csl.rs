//! Coincidence rotations of `L` and the sublattices they generate.
//!
//! A primitive admissible icosian `q` acts on `L` by
//! `R(q)x = q x q̃ / |q q̃|`. The resulting CSL `L ∩ R(q)L` is computed three
//! ways (direct intersection, `φ₊(q_α I)`, and `(q_α I + I q̃_α) ∩ L`) which
//! must agree, and its index is `lcm(nr q, nr q')`.

use serde::Serialize;

use crate::error::{CslError, Result};
use crate::icosian::{glcd, glcd_equal, left_ideal, right_ideal, same_right_ideal, Icosian};
use crate::lattice::{intersect_with_image, module_to_l, phi_plus_image, RationalMatrix4, SublatticeL};
use crate::quat::Quat;
use crate::ring::{lcm_o, KNum, OInt};

/// A coincidence rotation `R(q)` with its derived data.
#[derive(Clone, Debug, Serialize)]
pub struct CoincidenceRotation {
    pub q: Icosian,
    pub q_alpha: Icosian,
    pub alpha: OInt,
    #[serde(skip)]
    pub matrix: RationalMatrix4,
    pub sigma: u64,
    pub den: u64,
}

/// `Σ` as a rational integer: the canonical `lcm(m, m')` of a totally
/// positive `m` with square absolute norm is a positive rational integer.
fn sigma_of_norm(m: &OInt) -> Result<u64> {
    let l = lcm_o(m, &m.conj())?;
    if !l.is_rational() || l.a <= 0 {
        return Err(CslError::Inconsistent(format!(
            "lcm(nr, nr') = {l} is not a rational integer"
        )));
    }
    Ok(l.a as u64)
}

fn check_input(q: &Icosian) -> Result<()> {
    if q.is_zero() {
        return Err(CslError::ZeroInput("coincidence rotation"));
    }
    if !q.is_admissible()? {
        return Err(CslError::NotAdmissible(q.nr().abs_norm().to_string()));
    }
    Ok(())
}

fn check_primitive_admissible(q: &Icosian) -> Result<()> {
    check_input(q)?;
    if !q.is_primitive()? {
        return Err(CslError::NotPrimitive(q.to_string()));
    }
    Ok(())
}

/// Build `R(q)`. Non-primitive input is replaced by its primitive part.
pub fn rotation_of(q: &Icosian) -> Result<CoincidenceRotation> {
    check_input(q)?;
    let (q, _) = q.primitive_part()?;
    let den = q.den()?;
    let (q_alpha, alpha) = q.extension()?;
    let sigma = sigma_of_norm(&q.nr())?;
    let qt = q.twist();
    let scale = KNum::from(den as i64).inverse()?;
    let matrix = RationalMatrix4::from_map(|x| (&(q.quat() * x) * qt.quat()).scale(&scale))?;
    debug_assert!(matrix.is_g_orthogonal());
    Ok(CoincidenceRotation {
        q,
        q_alpha,
        alpha,
        matrix,
        sigma,
        den,
    })
}

/// `Σ(q) = lcm(nr q, nr q')`.
pub fn sigma(q: &Icosian) -> Result<u64> {
    check_primitive_admissible(q)?;
    sigma_of_norm(&q.nr())
}

/// `L ∩ R L` by exact lattice intersection.
pub fn csl_intersection(rot: &CoincidenceRotation) -> Result<SublatticeL> {
    intersect_with_image(&rot.matrix)
}

/// `L(q_α) = φ₊(q_α I)`; must coincide with [`csl_intersection`].
pub fn csl_lq(rot: &CoincidenceRotation) -> Result<SublatticeL> {
    phi_plus_image(&rot.q_alpha)
}

/// `(q_α I + I q̃_α) ∩ L`.
pub fn csl_ideal_form(rot: &CoincidenceRotation) -> Result<SublatticeL> {
    let right = right_ideal(std::slice::from_ref(&rot.q_alpha))?;
    let left = left_ideal(&[rot.q_alpha.twist()])?;
    module_to_l(&right.sum(&left)?)
}

/// The CSL of `q`, checked across all three constructions.
pub fn csl_checked(rot: &CoincidenceRotation) -> Result<SublatticeL> {
    let a = csl_intersection(rot)?;
    let b = csl_lq(rot)?;
    let c = csl_ideal_form(rot)?;
    if a != b || a != c {
        return Err(CslError::Inconsistent(format!(
            "CSL constructions disagree for {}: {a} / {b} / {c}",
            rot.q
        )));
    }
    if a.index() != rot.sigma {
        return Err(CslError::Inconsistent(format!(
            "index {} differs from Σ = {}",
            a.index(),
            rot.sigma
        )));
    }
    Ok(a)
}

/// CSL of the orientation-reversing isometry `x ↦ q x̄ q̃ / |q q̃|`.
pub fn reflection_csl(q: &Icosian) -> Result<SublatticeL> {
    let rot = rotation_of(q)?;
    let qt = rot.q.twist();
    let scale = KNum::from(rot.den as i64).inverse()?;
    let direct = RationalMatrix4::from_map(|x| {
        (&(rot.q.quat() * &x.conj()) * qt.quat()).scale(&scale)
    })?;
    let composed = rot.matrix.mul(&RationalMatrix4::from_map(Quat::conj)?);
    if direct != composed {
        return Err(CslError::Inconsistent(
            "reflection matrix differs from R(q)∘conj".into(),
        ));
    }
    intersect_with_image(&direct)
}

/// The `β` in `glcd(p, β)`: `|p p̃|`, divided once by `√5` when requested.
fn glcd_argument(p: &Icosian, divide_by_sqrt5: bool) -> Result<OInt> {
    let den = OInt::from_int(p.den()? as i64);
    if divide_by_sqrt5 {
        den.div_exact(&OInt::SQRT5).ok_or_else(|| {
            CslError::Inconsistent(format!("√5 does not divide den = {den}"))
        })
    } else {
        Ok(den)
    }
}

/// The criterion data of `p`: its balanced norm and the left divisor
/// `glcd(p, |p p̃|/c)`.
#[derive(Clone, Debug)]
pub struct CriterionKey {
    pub norm: OInt,
    pub divisor: Icosian,
}

/// `c = √5` exactly when `5 | Σ(p)`.
pub fn criterion_key(p: &Icosian) -> Result<CriterionKey> {
    check_primitive_admissible(p)?;
    let m = p.nr();
    let beta = glcd_argument(p, sigma_of_norm(&m)? % 5 == 0)?;
    Ok(CriterionKey {
        norm: m.normal()?,
        divisor: glcd(p, beta)?,
    })
}

/// Key for the sufficient condition with `c = 1`.
pub fn sufficient_key(p: &Icosian) -> Result<CriterionKey> {
    check_primitive_admissible(p)?;
    Ok(CriterionKey {
        norm: p.nr().normal()?,
        divisor: glcd(p, glcd_argument(p, false)?)?,
    })
}

/// Compare two criterion keys: equal balanced norms and equal glcds.
pub fn keys_match(k1: &CriterionKey, k2: &CriterionKey) -> Result<bool> {
    if k1.norm != k2.norm {
        return Ok(false);
    }
    glcd_equal(&k1.divisor, &k2.divisor)
}

fn log_norm_reading(p1: &Icosian, p2: &Icosian) {
    let literal = p1.nr() == p2.nr();
    let up_to_units = p1.nr().normal().ok() == p2.nr().normal().ok();
    if literal != up_to_units {
        log::debug!(
            "norm equality differs between literal and up-to-units readings: nr({p1}) = {}, nr({p2}) = {}",
            p1.nr(),
            p2.nr()
        );
    }
}

/// Equality of the CSLs of `p1` and `p2` decided by the norm/glcd criterion.
pub fn equal_csl(p1: &Icosian, p2: &Icosian) -> Result<bool> {
    log_norm_reading(p1, p2);
    keys_match(&criterion_key(p1)?, &criterion_key(p2)?)
}

/// The sufficient condition with `c = 1`; implies [`equal_csl`].
pub fn sufficient_equal_lemma(p1: &Icosian, p2: &Icosian) -> Result<bool> {
    keys_match(&sufficient_key(p1)?, &sufficient_key(p2)?)
}

/// Oracle for [`equal_csl`]: compare the Hermite bases of both CSLs.
pub fn equal_csl_by_hnf(p1: &Icosian, p2: &Icosian) -> Result<bool> {
    check_primitive_admissible(p1)?;
    check_primitive_admissible(p2)?;
    Ok(csl_intersection(&rotation_of(p1)?)? == csl_intersection(&rotation_of(p2)?)?)
}

/// `R(r)` and `R(s)` differ by a rotation symmetry of `L`, i.e. `rI = sI`.
pub fn symmetry_related(r: &Icosian, s: &Icosian) -> Result<bool> {
    same_right_ideal(r, s)
}

/// A rotation together with its CSL.
#[derive(Clone, Debug, Serialize)]
pub struct CslRecord {
    pub rotation: CoincidenceRotation,
    pub csl: SublatticeL,
}

impl CslRecord {
    pub fn new(q: &Icosian) -> Result<CslRecord> {
        let rotation = rotation_of(q)?;
        let csl = csl_intersection(&rotation)?;
        Ok(CslRecord { rotation, csl })
    }

    /// `{"q", "q_alpha", "sigma", "den", "hnf"}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "q": self.rotation.q,
            "q_alpha": self.rotation.q_alpha,
            "sigma": self.rotation.sigma,
            "den": self.rotation.den,
            "hnf": self.csl.flat(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::icosian::unit_group;

    fn ico(s: &str) -> Icosian {
        Icosian::from_quat(&s.parse().unwrap()).unwrap()
    }

    fn r() -> Icosian {
        ico("(t,2*t,0,0)")
    }

    fn s() -> Icosian {
        ico("(1+t,t,t,1)")
    }

    #[test]
    fn rotation_examples() {
        let one = rotation_of(&Icosian::one()).unwrap();
        assert_eq!(one.matrix, RationalMatrix4::identity());
        assert_eq!((one.sigma, one.den), (1, 1));

        let rot = rotation_of(&r()).unwrap();
        assert_eq!((rot.sigma, rot.den), (5, 5));
        assert!(rot.matrix.is_g_orthogonal());
        assert_eq!(rot.matrix.det(), num_traits::One::one());

        let u = rotation_of(&ico("(1/2,1/2,1/2,1/2)")).unwrap();
        assert_eq!(u.sigma, 1);
        assert!(u.matrix.is_g_orthogonal());

        assert!(matches!(
            rotation_of(&ico("(1,t,0,0)")),
            Err(CslError::NotAdmissible(_))
        ));
        assert!(rotation_of(&Icosian::from_oint(OInt::ZERO)).is_err());
    }

    #[test]
    fn non_primitive_input_is_reduced() {
        let big = r().scale(OInt::new(3, 1));
        let rot = rotation_of(&big).unwrap();
        assert_eq!(rot.q, r());
        assert_eq!(rot.sigma, 5);
    }

    #[test]
    fn extension_keeps_the_rotation() {
        for q in [r(), s(), ico("(1,1,0,0)")] {
            let rot = rotation_of(&q).unwrap();
            // q_α is q up to a scalar, so the rotation agrees up to sign
            let ext = rotation_of(&rot.q_alpha).unwrap();
            assert_eq!(ext.sigma, rot.sigma);
            assert_eq!(csl_intersection(&ext).unwrap(), csl_intersection(&rot).unwrap());
        }
    }

    #[test]
    fn three_constructions_agree() {
        for q in [Icosian::one(), r(), s(), ico("(1,1,0,0)"), ico("(1,1,1,0)")] {
            let rot = rotation_of(&q).unwrap();
            let csl = csl_checked(&rot).unwrap();
            assert_eq!(csl.index(), rot.sigma);
        }
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(&Icosian::one()).unwrap(), 1);
        assert_eq!(sigma(&r()).unwrap(), 5);
        assert_eq!(sigma(&ico("(1,2,0,0)")).unwrap(), 5);
    }

    #[test]
    fn units_give_symmetries() {
        for u in unit_group().icosians().iter().step_by(11) {
            let rot = rotation_of(u).unwrap();
            assert_eq!(csl_intersection(&rot).unwrap(), SublatticeL::full());
        }
    }

    #[test]
    fn worked_pair() {
        let (r, s) = (r(), s());
        let cr = csl_intersection(&rotation_of(&r).unwrap()).unwrap();
        let cs = csl_intersection(&rotation_of(&s).unwrap()).unwrap();
        assert_eq!(cr, cs);
        assert_eq!(cr.index(), 5);
        assert!(!symmetry_related(&r, &s).unwrap());
        assert!(equal_csl(&r, &s).unwrap());
        assert!(equal_csl_by_hnf(&r, &s).unwrap());
    }

    #[test]
    fn criterion_examples() {
        let q = ico("(1,1,1,0)");
        let u = ico("(1/2,1/2,1/2,1/2)");
        assert!(equal_csl(&q, &q.mul(&u)).unwrap());
        assert!(sufficient_equal_lemma(&q, &q).unwrap());
        assert!(!equal_csl(&q, &r()).unwrap());
        assert!(!sufficient_equal_lemma(&q, &r()).unwrap());
        assert!(symmetry_related(&q, &q.mul(&u)).unwrap());
    }

    #[test]
    fn reflections() {
        assert_eq!(reflection_csl(&Icosian::one()).unwrap(), SublatticeL::full());
        assert_eq!(reflection_csl(&r()).unwrap().index(), 5);
    }

    #[test]
    fn record_json_shape() {
        let rec = CslRecord::new(&r()).unwrap();
        let v = rec.to_json();
        assert_eq!(v["sigma"], 5);
        assert_eq!(v["den"], 5);
        assert_eq!(v["hnf"].as_array().unwrap().len(), 16);
        assert!(v["q"]["quat"].is_string());
    }
}
