//! Numerical univalence oracles for arbitrary polynomials on the unit disc.
//!
//! None of these use the composite structure: they only see coefficients.
//! Disc-level claims are made on radii strictly below one, since a
//! polynomial univalent in the open disc may still touch itself on the
//! boundary circle.

mod boundary;
mod collision;
mod winding;

use serde::Serialize;
use thiserror::Error;

use crate::certify::CollisionWitness;
use crate::polycore::PolyError;

pub use boundary::{boundary_curve, boundary_scan, chord_tolerance, is_simple, Crossing, SimplicityReport};
pub use collision::collision_scan;
pub use winding::{safety_margin, winding_count, winding_scan};

/// Reports list at most this many witnesses; `collisions_total` has the full count.
pub const MAX_REPORTED_WITNESSES: usize = 32;
/// Fraction of failed samples above which a scan is inconclusive.
pub const MAX_SKIP_FRACTION: f64 = 0.01;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("polynomial degree {0} is too small for this oracle")]
    DegreeTooSmall(usize),
    #[error("radius {0} outside the allowed range")]
    InvalidRadius(f64),
    #[error("need at least {need} vertices, got {got}")]
    TooFewVertices { need: usize, got: usize },
    #[error(
        "curve passes within {distance:e} of the target (safety margin {margin:e}); perturb the target or raise n"
    )]
    TooClose { distance: f64, margin: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleConfig {
    pub boundary_samples: usize,
    pub radial_steps: usize,
    pub angular_steps: usize,
    pub radii: Vec<f64>,
    pub collision_tol: f64,
    pub separation_tol: f64,
    pub refine_iters: usize,
    /// Targets per axis for the winding scan.
    pub winding_grid: usize,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            boundary_samples: 8192,
            radial_steps: 100,
            angular_steps: 200,
            radii: vec![0.9, 0.99, 0.999],
            collision_tol: 1e-8,
            separation_tol: 1e-6,
            refine_iters: 20,
            winding_grid: 64,
            seed: 0,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<(), OracleError> {
        let bad = |m: &str| Err(OracleError::InvalidConfig(m.into()));
        if self.boundary_samples < 16 {
            return bad("boundary_samples must be at least 16");
        }
        if self.radial_steps == 0 || self.angular_steps == 0 || self.winding_grid == 0 {
            return bad("grid sizes must be positive");
        }
        if self.radii.is_empty() || self.radii.iter().any(|r| !(*r > 0.0 && *r < 1.0)) {
            return bad("radii must be nonempty and inside (0, 1)");
        }
        if !(self.collision_tol > 0.0) || !(self.separation_tol > 0.0) {
            return bad("tolerances must be positive");
        }
        Ok(())
    }

    pub fn max_radius(&self) -> f64 {
        self.radii.iter().copied().fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OracleMethod {
    BoundarySimplicity,
    CollisionScan,
    WindingScan,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OracleVerdict {
    NoCollisionFound,
    CollisionFound,
    BoundaryNotSimple,
    Inconclusive,
}

impl OracleVerdict {
    /// `Some(true)` when the verdict supports univalence, `None` if inconclusive.
    pub fn supports_univalence(self) -> Option<bool> {
        match self {
            OracleVerdict::NoCollisionFound => Some(true),
            OracleVerdict::CollisionFound | OracleVerdict::BoundaryNotSimple => Some(false),
            OracleVerdict::Inconclusive => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub method: OracleMethod,
    pub verdict: OracleVerdict,
    pub witnesses: Vec<CollisionWitness>,
    pub collisions_total: usize,
    pub resolution: OracleConfig,
    pub max_winding: Option<i64>,
    pub samples: usize,
    pub skipped: usize,
    pub notes: Vec<String>,
}

/// Canonical witness order: `z` before `w` lexicographically, then the
/// list sorted by `z` and deduplicated within `radius`.
pub(crate) fn canonical_witnesses(
    mut witnesses: Vec<CollisionWitness>,
    radius: f64,
) -> Vec<CollisionWitness> {
    let key = |c: &num_complex::Complex64| (c.re, c.im);
    for w in witnesses.iter_mut() {
        if key(&w.w).partial_cmp(&key(&w.z)) == Some(std::cmp::Ordering::Less) {
            std::mem::swap(&mut w.z, &mut w.w);
            std::mem::swap(&mut w.fz, &mut w.fw);
        }
    }
    witnesses.sort_by(|a, b| {
        a.z.re
            .total_cmp(&b.z.re)
            .then(a.z.im.total_cmp(&b.z.im))
            .then(a.w.re.total_cmp(&b.w.re))
            .then(a.w.im.total_cmp(&b.w.im))
    });
    let mut kept: Vec<CollisionWitness> = Vec::with_capacity(witnesses.len());
    for w in witnesses {
        let duplicate = kept
            .iter()
            .rev()
            .take_while(|k| w.z.re - k.z.re <= radius)
            .any(|k| (k.z - w.z).norm() <= radius && (k.w - w.w).norm() <= radius);
        if !duplicate {
            kept.push(w);
        }
    }
    kept
}
