//! Univalence certificates for the family `f(z) = q((z + a)^2)` with
//! `q(t) = alpha (t^2 + C t) + gamma`.
//!
//! Everything rests on the factorization
//!
//! ```text
//! f(z) - f(w) = alpha (z - w) (z + w + 2a) ((z + a)^2 + (w + a)^2 + C)
//! ```
//!
//! so a collision in the open unit disc needs one of the three factors to
//! vanish. The first never counts, the second cannot vanish in the disc once
//! `|a| >= 1`, and the third is settled by comparing the sublevel set
//! `{Re((z + a)^2) <= -C/2}` with the disc.

use std::f64::consts::SQRT_2;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::oracle::OracleVerdict;
use crate::polycore::Poly;

/// Absolute band inside which a threshold counts as touching the disc.
pub const TIE_TOL: f64 = 1e-12;
/// Largest `|f(z) - f(w)|` accepted on a constructed witness.
pub const WITNESS_RESIDUAL_BOUND: f64 = 1e-10;
/// Margin kept between a constructed witness abscissa and the disc edge.
pub const WITNESS_EDGE_MARGIN: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CertifyError {
    #[error("invalid family parameters: {0}")]
    InvalidParams(String),
    #[error("no interior witness: hyperbola relation is {0:?}")]
    NoInteriorWitness(Relation),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FamilyParams {
    pub a: f64,
    pub alpha: f64,
    /// `-C` is the sum of the roots of `q`.
    #[serde(rename = "C")]
    pub c: f64,
    pub gamma: f64,
}

impl FamilyParams {
    pub fn new(a: f64, alpha: f64, c: f64, gamma: f64) -> Result<Self, CertifyError> {
        if ![a, alpha, c, gamma].iter().all(|v| v.is_finite()) {
            return Err(CertifyError::InvalidParams("non-finite value".into()));
        }
        if alpha == 0.0 {
            return Err(CertifyError::InvalidParams("alpha must be nonzero".into()));
        }
        Ok(FamilyParams { a, alpha, c, gamma })
    }

    /// `alpha = 1, gamma = 0`.
    pub fn monic(a: f64, c: f64) -> Result<Self, CertifyError> {
        FamilyParams::new(a, 1.0, c, 0.0)
    }

    /// Location of the apex of `q`.
    pub fn apex(&self) -> f64 {
        -self.c / 2.0
    }

    pub fn outer(&self) -> Poly<Complex64> {
        Poly::from_real(&[self.gamma, self.alpha * self.c, self.alpha])
    }

    /// The quartic `q((z + a)^2)`.
    pub fn quartic(&self) -> Poly<Complex64> {
        let inner = Poly::shifted_square(Complex64::new(self.a, 0.0));
        self.outer().compose(&inner).expect("degree 4 is under the cap")
    }
}

/// `(z - w, z + w + 2a, (z + a)^2 + (w + a)^2 + C)`.
pub fn collision_factorization(params: &FamilyParams, z: Complex64, w: Complex64) -> [Complex64; 3] {
    let a = params.a;
    let u = (z + a) * (z + a);
    let v = (w + a) * (w + a);
    [z - w, z + w + 2.0 * a, u + v + params.c]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CriterionTag {
    Identical,
    SquareEqual,
    ApexSymmetric,
    NotACollision,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CriterionCase {
    pub tag: CriterionTag,
    pub factor_values: [Complex64; 3],
}

/// Report the first factor (in order) that vanishes to within `tol` times
/// its natural scale.
pub fn classify_pair(params: &FamilyParams, z: Complex64, w: Complex64, tol: f64) -> CriterionCase {
    let factors = collision_factorization(params, z, w);
    let a = params.a.abs();
    let scales = [
        1.0 + z.norm() + w.norm(),
        1.0 + z.norm() + w.norm() + 2.0 * a,
        1.0 + (z + params.a).norm_sqr() + (w + params.a).norm_sqr() + params.c.abs(),
    ];
    let tags = [
        CriterionTag::Identical,
        CriterionTag::SquareEqual,
        CriterionTag::ApexSymmetric,
    ];
    let tag = (0..3)
        .find(|&k| factors[k].norm() <= tol * scales[k])
        .map_or(CriterionTag::NotACollision, |k| tags[k]);
    CriterionCase {
        tag,
        factor_values: factors,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RegionSpec {
    pub a: f64,
    /// The region is `{(x + a)^2 - y^2 <= t}`.
    pub t: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    Disjoint,
    Tangent,
    Overlapping,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DisjointnessResult {
    pub relation: Relation,
    /// Minimum of `Re((z + a)^2)` over the closed disc.
    pub boundary_min: f64,
    /// Maximum of `Re((z + a)^2)` over the closed disc.
    pub boundary_max: f64,
    /// Tangent points, or one interior witness when overlapping.
    pub contact_points: Vec<Complex64>,
}

/// `min Re((z + a)^2)` over `|z| <= 1`. The function is harmonic, so the
/// extremum sits on the circle where it equals `2x^2 + 2ax + a^2 - 1`.
pub fn boundary_min(a: f64) -> f64 {
    if a.abs() <= 2.0 {
        a * a / 2.0 - 1.0
    } else {
        (a.abs() - 1.0).powi(2)
    }
}

pub fn boundary_max(a: f64) -> f64 {
    (a.abs() + 1.0).powi(2)
}

pub fn region_disjointness(spec: RegionSpec, tie_tol: f64) -> DisjointnessResult {
    let RegionSpec { a, t } = spec;
    let m = boundary_min(a);
    let big_m = boundary_max(a);
    let (relation, contact_points) = if t < m - tie_tol {
        (Relation::Disjoint, Vec::new())
    } else if (t - m).abs() <= tie_tol {
        let points = if a.abs() < 2.0 {
            let y = (1.0 - a * a / 4.0).sqrt();
            vec![Complex64::new(-a / 2.0, y), Complex64::new(-a / 2.0, -y)]
        } else {
            vec![Complex64::new(-a.signum(), 0.0)]
        };
        (Relation::Tangent, points)
    } else {
        let witness = if t < big_m {
            hyperbola_point_inside(a, t).unwrap_or(Complex64::new(0.0, 0.0))
        } else {
            // the whole disc lies in the region
            Complex64::new(0.0, 0.0)
        };
        (Relation::Overlapping, vec![witness])
    };
    DisjointnessResult {
        relation,
        boundary_min: m,
        boundary_max: big_m,
        contact_points,
    }
}

/// A point of `(x + a)^2 - y^2 = t` with `y > 0` strictly inside the unit disc.
///
/// First tries the abscissa `x = -a/2` (clamped away from the edge), which is
/// where the level curve reaches deepest into the disc while `t < a^2/4`.
/// Otherwise walks the branch nearest the disc and takes the point that
/// best balances distance to the circle against distance to the real axis.
fn hyperbola_point_inside(a: f64, t: f64) -> Option<Complex64> {
    let eps = WITNESS_EDGE_MARGIN;
    let x0 = (-a / 2.0).clamp(-1.0 + eps, 1.0 - eps);
    let y_sq = (x0 + a).powi(2) - t;
    if y_sq > 0.0 && x0 * x0 + y_sq < 1.0 {
        return Some(Complex64::new(x0, y_sq.sqrt()));
    }

    let side = if a >= 0.0 { 1.0 } else { -1.0 };
    let steps = 4096;
    let mut best: Option<(f64, Complex64)> = None;
    for k in 1..steps {
        let y = k as f64 / steps as f64;
        let s = t + y * y;
        if s < 0.0 {
            continue;
        }
        let z = Complex64::new(-a + side * s.sqrt(), y);
        let score = (1.0 - z.norm()).min(y);
        if score > 0.0 && best.is_none_or(|(b, _)| score > b) {
            best = Some((score, z));
        }
    }
    best.map(|(_, z)| z)
}

/// Two distinct disc points with equal image, the checkable disproof of
/// univalence.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CollisionWitness {
    pub z: Complex64,
    pub w: Complex64,
    pub fz: Complex64,
    pub fw: Complex64,
    pub residual: f64,
}

impl CollisionWitness {
    pub fn evaluate(p: &Poly<Complex64>, z: Complex64, w: Complex64) -> Self {
        let fz = p.eval(&z);
        let fw = p.eval(&w);
        CollisionWitness {
            z,
            w,
            fz,
            fw,
            residual: (fz - fw).norm(),
        }
    }

    pub fn conj(&self) -> Self {
        CollisionWitness {
            z: self.z.conj(),
            w: self.w.conj(),
            fz: self.fz.conj(),
            fw: self.fw.conj(),
            residual: self.residual,
        }
    }

    pub fn separation(&self) -> f64 {
        (self.z - self.w).norm()
    }

    pub fn max_modulus(&self) -> f64 {
        self.z.norm().max(self.w.norm())
    }
}

/// For a disc point `z` off the real axis with `Re((z + a)^2) = -C/2`, the
/// pair `(z, conj z)` zeroes the third factor since
/// `(z + a)^2 + (conj z + a)^2 + C = 2 Re((z + a)^2) + C`.
pub fn conjugate_pair_witness(params: &FamilyParams) -> Result<CollisionWitness, CertifyError> {
    let t = params.apex();
    let region = region_disjointness(RegionSpec { a: params.a, t }, TIE_TOL);
    if region.relation != Relation::Overlapping {
        return Err(CertifyError::NoInteriorWitness(region.relation));
    }
    if t >= region.boundary_max {
        return Err(CertifyError::NoInteriorWitness(region.relation));
    }
    let z = hyperbola_point_inside(params.a, t)
        .ok_or(CertifyError::NoInteriorWitness(region.relation))?;
    Ok(CollisionWitness::evaluate(&params.quartic(), z, z.conj()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    CertifiedUnivalent,
    CertifiedNotUnivalent,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Outcome {
    /// The criterion cannot produce a collision in the open disc.
    Safe,
    /// The criterion produces a collision.
    Violated,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionOutcome {
    pub criterion: u8,
    pub outcome: Outcome,
    /// Set when the argument is applied beyond the `a = 1, C = 1` base case.
    pub derived: bool,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub criterion_trace: Vec<CriterionOutcome>,
    pub region: DisjointnessResult,
    /// `|a| > sqrt 2`, or `1 < |a| < sqrt 2` and `C > (2 - a^2)/4`.
    pub remark_verdict: bool,
    /// Whether `|a|` falls in one of the two ranges the inequality covers.
    pub remark_applicable: bool,
    /// Univalence implied by the region argument, `None` when it is silent.
    pub region_verdict: Option<bool>,
    pub disagreement: bool,
    pub witness: Option<CollisionWitness>,
}

impl Verdict {
    /// Fold a conclusive oracle verdict into the disagreement flag.
    pub fn note_oracle(&mut self, oracle: OracleVerdict) {
        let oracle_univalent = match oracle {
            OracleVerdict::NoCollisionFound => Some(true),
            OracleVerdict::CollisionFound | OracleVerdict::BoundaryNotSimple => Some(false),
            OracleVerdict::Inconclusive => None,
        };
        if let (Some(o), Some(r)) = (oracle_univalent, self.region_verdict) {
            if o != r {
                self.disagreement = true;
            }
        }
        if let Some(o) = oracle_univalent {
            if self.remark_applicable && o != self.remark_verdict {
                self.disagreement = true;
            }
        }
    }
}

/// The `remark_verdict` inequality evaluated literally, as
/// `(verdict, applicable)`.
pub fn remark_condition(a: f64, c: f64) -> (bool, bool) {
    let abs_a = a.abs();
    let applicable = abs_a > 1.0 && abs_a != SQRT_2;
    let verdict = abs_a > SQRT_2 || (abs_a > 1.0 && abs_a < SQRT_2 && c > (2.0 - a * a) / 4.0);
    (verdict, applicable)
}

pub fn certify_family(params: &FamilyParams) -> Result<Verdict, CertifyError> {
    let params = FamilyParams::new(params.a, params.alpha, params.c, params.gamma)?;
    let a = params.a;
    let t = params.apex();
    let base_case = a.abs() == 1.0 && params.c == 1.0;

    let mut trace = vec![CriterionOutcome {
        criterion: 1,
        outcome: Outcome::Safe,
        derived: false,
        note: "z = w is not a collision".into(),
    }];

    let second_safe = a.abs() >= 1.0;
    trace.push(if second_safe {
        CriterionOutcome {
            criterion: 2,
            outcome: Outcome::Safe,
            derived: a.abs() != 1.0,
            note: format!("|z + w| < 2 <= 2|a| = {} on the open disc", 2.0 * a.abs()),
        }
    } else {
        CriterionOutcome {
            criterion: 2,
            outcome: Outcome::Inconclusive,
            derived: true,
            note: format!("|a| = {} < 1: the shift -a lies inside the disc", a.abs()),
        }
    });

    let region = region_disjointness(RegionSpec { a, t }, TIE_TOL);
    let mut witness = None;
    let third = match region.relation {
        Relation::Disjoint | Relation::Tangent => CriterionOutcome {
            criterion: 3,
            outcome: Outcome::Safe,
            derived: !base_case,
            note: format!(
                "{:?}: -C/2 = {} against min Re((z+a)^2) = {} on the closed disc",
                region.relation, t, region.boundary_min
            ),
        },
        Relation::Overlapping if t >= region.boundary_max => CriterionOutcome {
            criterion: 3,
            outcome: Outcome::Safe,
            derived: true,
            note: format!(
                "-C/2 = {} >= max Re((z+a)^2) = {}: the required sum is unreachable",
                t, region.boundary_max
            ),
        },
        Relation::Overlapping => match conjugate_pair_witness(&params) {
            Ok(w) if w.residual <= WITNESS_RESIDUAL_BOUND * params.quartic().max_coeff_abs().max(1.0)
                && w.max_modulus() < 1.0 =>
            {
                witness = Some(w);
                CriterionOutcome {
                    criterion: 3,
                    outcome: Outcome::Violated,
                    derived: true,
                    note: format!(
                        "-C/2 = {} exceeds min Re((z+a)^2) = {}: conjugate pair collides",
                        t, region.boundary_min
                    ),
                }
            }
            Ok(w) => CriterionOutcome {
                criterion: 3,
                outcome: Outcome::Inconclusive,
                derived: true,
                note: format!("witness failed verification (residual {:e})", w.residual),
            },
            Err(e) => CriterionOutcome {
                criterion: 3,
                outcome: Outcome::Inconclusive,
                derived: true,
                note: e.to_string(),
            },
        },
    };
    let third_outcome = third.outcome;
    trace.push(third);

    let status = match (second_safe, third_outcome) {
        (false, _) | (_, Outcome::Inconclusive) => Status::Inconclusive,
        (true, Outcome::Safe) => Status::CertifiedUnivalent,
        (true, Outcome::Violated) => Status::CertifiedNotUnivalent,
    };
    let region_verdict = match status {
        Status::CertifiedUnivalent => Some(true),
        Status::CertifiedNotUnivalent => Some(false),
        Status::Inconclusive => None,
    };
    let (remark_verdict, remark_applicable) = remark_condition(a, params.c);
    let disagreement = remark_applicable && region_verdict.is_some_and(|r| r != remark_verdict);

    Ok(Verdict {
        status,
        criterion_trace: trace,
        region,
        remark_verdict,
        remark_applicable,
        region_verdict,
        disagreement,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn f4_params() -> FamilyParams {
        FamilyParams::new(1.0, 1.0 / 6.0, 1.0, -1.0 / 3.0).unwrap()
    }

    fn tangent_points() -> [Complex64; 2] {
        let h = 3f64.sqrt() / 2.0;
        [c(-0.5, h), c(-0.5, -h)]
    }

    #[test]
    fn params_validation() {
        assert!(FamilyParams::new(1.0, 0.0, 1.0, 0.0).is_err());
        assert!(FamilyParams::new(f64::NAN, 1.0, 1.0, 0.0).is_err());
        let bad = FamilyParams {
            a: 1.0,
            alpha: 0.0,
            c: 1.0,
            gamma: 0.0,
        };
        assert!(certify_family(&bad).is_err());
    }

    #[test]
    fn f4_params_rebuild_f4() {
        let f = f4_params().quartic();
        let want = [0.0, 1.0, 7.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0];
        for (k, w) in want.iter().enumerate() {
            assert!((f.coeff(k) - c(*w, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn factorization_examples() {
        let p = f4_params();
        let z = c(0.3, -0.2);
        assert_eq!(collision_factorization(&p, z, z)[0], c(0.0, 0.0));
        assert_eq!(collision_factorization(&p, c(0.0, 0.0), c(-2.0, 0.0))[1], c(0.0, 0.0));
        let [u, v] = tangent_points();
        assert!(collision_factorization(&p, u, v)[2].norm() < 1e-15);
    }

    #[test]
    fn classify_examples() {
        let p = f4_params();
        let tol = 1e-12;
        assert_eq!(classify_pair(&p, c(0.3, 0.0), c(0.3, 0.0), tol).tag, CriterionTag::Identical);
        assert_eq!(classify_pair(&p, c(0.0, 0.0), c(-2.0, 0.0), tol).tag, CriterionTag::SquareEqual);
        let [u, v] = tangent_points();
        assert_eq!(classify_pair(&p, u, v, tol).tag, CriterionTag::ApexSymmetric);
        // f takes -1/2 at both
        let f = p.quartic();
        assert!((f.eval(&u) - c(-0.5, 0.0)).norm() < 1e-14);
        assert!((f.eval(&v) - c(-0.5, 0.0)).norm() < 1e-14);
        assert_eq!(
            classify_pair(&p, c(0.1, 0.0), c(0.4, 0.2), tol).tag,
            CriterionTag::NotACollision
        );
    }

    #[test]
    fn tangency_at_a_one() {
        let r = region_disjointness(RegionSpec { a: 1.0, t: -0.5 }, TIE_TOL);
        assert_eq!(r.relation, Relation::Tangent);
        assert_eq!(r.boundary_min, -0.5);
        assert_eq!(r.boundary_max, 4.0);
        for (got, want) in r.contact_points.iter().zip(tangent_points()) {
            assert!((got - want).norm() < 1e-12);
            assert!((got.norm() - 1.0).abs() < 1e-12);
            assert!(((got.re + 1.0).powi(2) - got.im.powi(2) + 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn disjoint_and_overlapping() {
        let r = region_disjointness(RegionSpec { a: 1.0, t: -0.6 }, TIE_TOL);
        assert_eq!(r.relation, Relation::Disjoint);
        assert!(r.contact_points.is_empty());

        let r = region_disjointness(RegionSpec { a: 1.1, t: -0.15 }, TIE_TOL);
        assert_eq!(r.relation, Relation::Overlapping);
        let z = r.contact_points[0];
        assert!((z - c(-0.55, 0.4525f64.sqrt())).norm() < 1e-12);
        assert!((z.norm_sqr() - 0.755).abs() < 1e-12);
        assert!((z.re + 1.1).powi(2) - z.im.powi(2) <= -0.15 + 1e-12);
    }

    #[test]
    fn large_shift_tangency_is_on_axis() {
        let r = region_disjointness(RegionSpec { a: 3.0, t: 4.0 }, TIE_TOL);
        assert_eq!(r.relation, Relation::Tangent);
        assert_eq!(r.contact_points, vec![c(-1.0, 0.0)]);
        let r = region_disjointness(RegionSpec { a: -2.5, t: 2.25 }, TIE_TOL);
        assert_eq!(r.contact_points, vec![c(1.0, 0.0)]);
    }

    #[test]
    fn whole_disc_inside_region() {
        let r = region_disjointness(RegionSpec { a: 1.0, t: 5.0 }, TIE_TOL);
        assert_eq!(r.relation, Relation::Overlapping);
        assert_eq!(r.contact_points, vec![c(0.0, 0.0)]);
    }

    #[test]
    fn conjugate_witness_examples() {
        let w = conjugate_pair_witness(&FamilyParams::monic(1.1, 0.3).unwrap()).unwrap();
        assert!((w.z - c(-0.55, 0.4525f64.sqrt())).norm() < 1e-12);
        assert_eq!(w.w, w.z.conj());
        assert!(w.residual < 1e-12);

        let w = conjugate_pair_witness(&FamilyParams::monic(1.5, -1.0).unwrap()).unwrap();
        assert!((w.z - c(-0.75, 0.25)).norm() < 1e-12);
        assert!(w.residual < 1e-12);

        assert_eq!(
            conjugate_pair_witness(&f4_params()),
            Err(CertifyError::NoInteriorWitness(Relation::Tangent))
        );
        assert_eq!(
            conjugate_pair_witness(&FamilyParams::monic(1.5, 3.0).unwrap()),
            Err(CertifyError::NoInteriorWitness(Relation::Disjoint))
        );
    }

    #[test]
    fn fallback_witness_when_apex_abscissa_misses() {
        // t = 0.9 > a^2/4 so the x = -a/2 vertical line never reaches t
        let p = FamilyParams::monic(1.2, -1.8).unwrap();
        let w = conjugate_pair_witness(&p).unwrap();
        assert!(w.z.norm() < 1.0 && w.z.im > 0.0);
        let x = w.z.re + 1.2;
        assert!((x * x - w.z.im * w.z.im - 0.9).abs() < 1e-12);
        assert!(w.residual < 1e-12);
    }

    #[test]
    fn certify_f4() {
        let v = certify_family(&f4_params()).unwrap();
        assert_eq!(v.status, Status::CertifiedUnivalent);
        assert_eq!(v.region.relation, Relation::Tangent);
        assert!(!v.remark_applicable);
        assert!(!v.disagreement);
        assert!(v.witness.is_none());
        assert!(v.criterion_trace.iter().all(|c| !c.derived));
    }

    #[test]
    fn certify_collision_instance() {
        let v = certify_family(&FamilyParams::monic(1.1, 0.3).unwrap()).unwrap();
        assert_eq!(v.status, Status::CertifiedNotUnivalent);
        assert!(v.remark_verdict);
        assert!(v.disagreement);
        let w = v.witness.unwrap();
        assert!(w.residual <= 1e-10);
    }

    #[test]
    fn certify_disjoint_instance() {
        let v = certify_family(&FamilyParams::monic(1.5, 3.0).unwrap()).unwrap();
        assert_eq!(v.status, Status::CertifiedUnivalent);
        assert_eq!(v.region.relation, Relation::Disjoint);
        assert!(v.remark_verdict);
        assert!(!v.disagreement);
    }

    #[test]
    fn small_shift_is_inconclusive() {
        let v = certify_family(&FamilyParams::monic(0.5, 1.0).unwrap()).unwrap();
        assert_eq!(v.status, Status::Inconclusive);
        assert_eq!(v.criterion_trace[1].outcome, Outcome::Inconclusive);
        assert_eq!(v.region_verdict, None);
        assert!(!v.disagreement);
    }

    #[test]
    fn unreachable_apex_is_univalent() {
        // -C/2 = 5 >= M(1) = 4
        let v = certify_family(&FamilyParams::monic(1.0, -10.0).unwrap()).unwrap();
        assert_eq!(v.status, Status::CertifiedUnivalent);
        assert!(v.criterion_trace[2].derived);
    }

    #[test]
    fn remark_inequality_literal() {
        assert_eq!(remark_condition(1.0, 1.0), (false, false));
        assert_eq!(remark_condition(1.1, 0.3), (true, true));
        assert_eq!(remark_condition(1.1, 0.1), (false, true));
        assert_eq!(remark_condition(-1.5, -100.0), (true, true));
        assert_eq!(remark_condition(0.5, 1.0), (false, false));
    }

    #[test]
    fn oracle_conflict_sets_disagreement() {
        let mut v = certify_family(&FamilyParams::monic(1.5, 3.0).unwrap()).unwrap();
        v.note_oracle(OracleVerdict::Inconclusive);
        assert!(!v.disagreement);
        v.note_oracle(OracleVerdict::NoCollisionFound);
        assert!(!v.disagreement);
        v.note_oracle(OracleVerdict::CollisionFound);
        assert!(v.disagreement);
    }
}
