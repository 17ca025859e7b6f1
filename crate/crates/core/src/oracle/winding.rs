//! Argument-principle preimage counts.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::boundary::boundary_curve;
use super::{
    canonical_witnesses, OracleConfig, OracleError, OracleMethod, OracleReport, OracleVerdict,
    MAX_REPORTED_WITNESSES, MAX_SKIP_FRACTION,
};
use crate::certify::CollisionWitness;
use crate::polycore::{roots, Poly, DEFAULT_ROOT_TOL};

/// Finest sampling the scan will try near the curve, as a multiple of `n`.
const MAX_REFINE_FACTOR: usize = 64;
/// Count-2 targets whose preimages are solved for witnesses.
const WITNESS_TARGETS: usize = 16;

/// Distance the sampled curve must keep from a target for the discrete
/// winding number to equal the continuous one.
///
/// Between consecutive samples the arc of `p(r e^{i theta})` stays within
/// `(2 pi / n) sum k |c_k| r^k` of the starting vertex, and so does the
/// chord. If that disc misses the target, arc and chord are homotopic in
/// the punctured plane.
pub fn safety_margin(p: &Poly<Complex64>, r: f64, n: usize) -> f64 {
    let first: f64 = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| k as f64 * c.norm() * r.powi(k as i32))
        .sum();
    TAU / n as f64 * first
}

fn curve_winding(curve: &[Complex64], target: Complex64, margin: f64) -> Result<i64, OracleError> {
    let dist_sqr = curve
        .iter()
        .map(|v| (v - target).norm_sqr())
        .fold(f64::INFINITY, f64::min);
    if !(dist_sqr > margin * margin) {
        return Err(OracleError::TooClose {
            distance: dist_sqr.sqrt(),
            margin,
        });
    }
    // signed crossings of the rightward horizontal ray from the target
    let mut winding = 0i64;
    let mut prev = curve[curve.len() - 1] - target;
    for v in curve {
        let cur = v - target;
        let side = prev.re * cur.im - cur.re * prev.im;
        if prev.im <= 0.0 {
            if cur.im > 0.0 && side > 0.0 {
                winding += 1;
            }
        } else if cur.im <= 0.0 && side < 0.0 {
            winding -= 1;
        }
        prev = cur;
    }
    Ok(winding)
}

/// Number of zeros of `p - w` in `|z| < r`, counted with multiplicity.
pub fn winding_count(p: &Poly<Complex64>, w: Complex64, r: f64, n: usize) -> Result<i64, OracleError> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(OracleError::InvalidRadius(r));
    }
    if n < 16 {
        return Err(OracleError::TooFewVertices { need: 16, got: n });
    }
    let curve = boundary_curve(p, r, n);
    curve_winding(&curve, w, safety_margin(p, r, n))
}

/// Count for a target near the curve by resampling more finely.
fn refined_count(p: &Poly<Complex64>, target: Complex64, r: f64, n: usize) -> Option<i64> {
    let mut m = n * 2;
    while m <= n * MAX_REFINE_FACTOR {
        if let Ok(k) = winding_count(p, target, r, m) {
            return Some(k);
        }
        m *= 2;
    }
    None
}

/// Winding counts over a jittered grid of targets spanning the bounding
/// box of the image of `|z| = r`. Any count of two or more is a collision.
pub fn winding_scan(p: &Poly<Complex64>, r: f64, cfg: &OracleConfig) -> Result<OracleReport, OracleError> {
    cfg.validate()?;
    if !(r > 0.0 && r < 1.0) {
        return Err(OracleError::InvalidRadius(r));
    }
    if p.degree() < 1 {
        return Err(OracleError::DegreeTooSmall(p.degree()));
    }
    let n = cfg.boundary_samples;
    let curve = boundary_curve(p, r, n);
    let margin = safety_margin(p, r, n);

    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for v in &curve {
        x0 = x0.min(v.re);
        x1 = x1.max(v.re);
        y0 = y0.min(v.im);
        y1 = y1.max(v.im);
    }
    let g = cfg.winding_grid;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5749_4e44);
    let targets: Vec<Complex64> = (0..g * g)
        .map(|idx| {
            let (i, j) = (idx % g, idx / g);
            let (u, v): (f64, f64) = (rng.gen(), rng.gen());
            Complex64::new(
                x0 + (x1 - x0) * (i as f64 + u) / g as f64,
                y0 + (y1 - y0) * (j as f64 + v) / g as f64,
            )
        })
        .collect();

    let counts: Vec<Option<i64>> = targets
        .par_iter()
        .map(|&t| match curve_winding(&curve, t, margin) {
            Ok(k) => Some(k),
            Err(_) => refined_count(p, t, r, n),
        })
        .collect();

    let skipped = counts.iter().filter(|c| c.is_none()).count();
    let max_winding = counts.iter().flatten().copied().max();

    let mut witnesses = Vec::new();
    let mut collisions = 0;
    for (t, _) in targets
        .iter()
        .zip(&counts)
        .filter(|(_, c)| c.is_some_and(|k| k >= 2))
    {
        collisions += 1;
        if collisions > WITNESS_TARGETS {
            continue;
        }
        let shifted = p - &Poly::constant(*t);
        let Ok(set) = roots(&shifted, DEFAULT_ROOT_TOL) else {
            continue;
        };
        let inside: Vec<Complex64> = set
            .expanded()
            .into_iter()
            .filter(|z| z.norm() < r)
            .collect();
        for (i, &z) in inside.iter().enumerate() {
            for &w in &inside[i + 1..] {
                let c = CollisionWitness::evaluate(p, z, w);
                if c.separation() > cfg.separation_tol && c.residual <= cfg.collision_tol * p.max_coeff_abs() {
                    witnesses.push(c);
                }
            }
        }
    }
    let witnesses = canonical_witnesses(witnesses, 1e-6);

    let verdict = if max_winding.is_some_and(|k| k >= 2) {
        OracleVerdict::CollisionFound
    } else if skipped as f64 > MAX_SKIP_FRACTION * targets.len() as f64 || max_winding.is_none() {
        OracleVerdict::Inconclusive
    } else {
        OracleVerdict::NoCollisionFound
    };
    let mut notes = vec![format!("radius {r}, {g}x{g} targets, safety margin {margin:e}")];
    if skipped > 0 {
        notes.push(format!("{skipped} targets too close to the curve"));
    }
    Ok(OracleReport {
        method: OracleMethod::WindingScan,
        verdict,
        collisions_total: collisions,
        witnesses: witnesses.into_iter().take(MAX_REPORTED_WITNESSES).collect(),
        resolution: cfg.clone(),
        max_winding,
        samples: targets.len(),
        skipped,
        notes,
    })
}
