//! Collision search: for each sample `z`, solve `p(w) = p(z)` and look for
//! partners `w != z` inside the disc.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    canonical_witnesses, OracleConfig, OracleError, OracleMethod, OracleReport, OracleVerdict,
    MAX_REPORTED_WITNESSES, MAX_SKIP_FRACTION,
};
use crate::certify::CollisionWitness;
use crate::polycore::{newton_polish, simultaneous_roots, Poly};

/// Partners out to this modulus are kept as seeds for the descent step.
const NEAR_MISS_LIMIT: f64 = 1.05;
const NEAR_MISS_SEEDS: usize = 16;
const NEAR_MISS_SPACING: f64 = 0.02;
const DESCENT_STEPS: usize = 400;
const DEDUPE_RADIUS: f64 = 1e-6;

struct SampleOutcome {
    hits: Vec<(Complex64, Complex64)>,
    near_miss: Option<(f64, Complex64, Complex64)>,
    failed: bool,
}

/// Jittered polar grid on `|z| <= r_max`, deterministic in the seed.
fn sample_points(cfg: &OracleConfig) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let r_max = cfg.max_radius();
    let (nr, na) = (cfg.radial_steps, cfg.angular_steps);
    let mut out = Vec::with_capacity(nr * na);
    for i in 0..nr {
        for k in 0..na {
            let jr: f64 = rng.gen_range(0.0..0.5);
            let ja: f64 = rng.gen();
            let r = r_max * (i as f64 + 1.0 - jr) / nr as f64;
            let theta = TAU * (k as f64 + ja) / na as f64;
            out.push(Complex64::from_polar(r, theta));
        }
    }
    out
}

/// Coefficients of `(p(w) - p(z)) / (w - z)`.
fn deflate(p: &Poly<Complex64>, z: Complex64) -> Vec<Complex64> {
    let c = p.coeffs();
    let n = c.len() - 1;
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    let mut acc = c[n];
    for k in (0..n).rev() {
        out[k] = acc;
        acc = acc * z + c[k];
    }
    out
}

fn scan_sample(p: &Poly<Complex64>, z: Complex64, r_max: f64, tol: f64, sep: f64) -> SampleOutcome {
    let value = p.eval(&z);
    let g = Poly::new(deflate(p, z));
    let mut outcome = SampleOutcome {
        hits: Vec::new(),
        near_miss: None,
        failed: false,
    };
    if g.degree() == 0 {
        return outcome;
    }
    for w in simultaneous_roots(g.coeffs()) {
        let w = newton_polish(&g, w);
        if !w.is_finite() || (p.eval(&w) - value).norm() > tol {
            outcome.failed = true;
            continue;
        }
        if (w - z).norm() <= sep {
            continue;
        }
        let rho = z.norm().max(w.norm());
        if w.norm() <= r_max {
            outcome.hits.push((z, w));
        } else if rho < NEAR_MISS_LIMIT && outcome.near_miss.is_none_or(|(b, _, _)| rho < b) {
            outcome.near_miss = Some((rho, z, w));
        }
    }
    outcome
}

/// Newton iteration for `p(w) = target` from `w`.
fn solve_partner(
    p: &Poly<Complex64>,
    target: Complex64,
    mut w: Complex64,
    iters: usize,
    tol: f64,
) -> Option<Complex64> {
    for _ in 0..iters.max(1) {
        let (v, dv) = p.eval_with_derivative(w);
        let r = v - target;
        if r.norm() == 0.0 {
            break;
        }
        if dv.norm() == 0.0 {
            return None;
        }
        let step = r / dv;
        w -= step;
        if step.norm() <= f64::EPSILON * (1.0 + w.norm()) {
            break;
        }
    }
    let ok = w.is_finite() && (p.eval(&w) - target).norm() <= tol;
    ok.then_some(w)
}

/// Slide a colliding pair along `p(z) = p(w)` to reduce `|z|^2 + |w|^2`,
/// moving a near-boundary collision into the sampled disc.
fn descend(
    p: &Poly<Complex64>,
    dp: &Poly<Complex64>,
    mut z: Complex64,
    mut w: Complex64,
    cfg: &OracleConfig,
    tol: f64,
) -> Option<(Complex64, Complex64)> {
    let objective = |z: Complex64, w: Complex64| z.norm_sqr() + w.norm_sqr();
    let mut phi = objective(z, w);
    let mut eta = 0.25;
    for _ in 0..DESCENT_STEPS {
        let dpw = dp.eval(&w);
        if dpw.norm() == 0.0 {
            return None;
        }
        // dw/dz along the collision curve
        let slope = dp.eval(&z) / dpw;
        let grad = z + w * slope.conj();
        if grad.norm() < 1e-14 {
            break;
        }
        let mut accepted = false;
        while eta > 1e-12 {
            let z1 = z - grad * eta;
            let guess = w + slope * (z1 - z);
            if let Some(w1) = solve_partner(p, p.eval(&z1), guess, cfg.refine_iters, tol) {
                let phi1 = objective(z1, w1);
                if phi1 < phi && (w1 - z1).norm() > cfg.separation_tol {
                    z = z1;
                    w = w1;
                    phi = phi1;
                    eta = (eta * 1.5).min(1.0);
                    accepted = true;
                    break;
                }
            }
            eta *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    Some((z, w))
}

pub fn collision_scan(p: &Poly<Complex64>, cfg: &OracleConfig) -> Result<OracleReport, OracleError> {
    cfg.validate()?;
    if p.degree() < 2 {
        return Err(OracleError::DegreeTooSmall(p.degree()));
    }
    let r_max = cfg.max_radius();
    let scale = p.max_coeff_abs();
    let tol = cfg.collision_tol * scale;
    let sep = cfg.separation_tol;

    let samples = sample_points(cfg);
    let outcomes: Vec<SampleOutcome> = samples
        .par_iter()
        .map(|&z| scan_sample(p, z, r_max, tol, sep))
        .collect();

    let skipped = outcomes.iter().filter(|o| o.failed).count();
    let mut notes = Vec::new();
    let mut candidates = Vec::new();
    for o in &outcomes {
        for &(z, w) in &o.hits {
            if let Some(w) = solve_partner(p, p.eval(&z), w, cfg.refine_iters, tol) {
                if w.norm() <= r_max && (w - z).norm() > sep {
                    candidates.push(CollisionWitness::evaluate(p, z, w));
                }
            }
        }
    }

    if candidates.is_empty() {
        let mut misses: Vec<(usize, f64, Complex64, Complex64)> = outcomes
            .iter()
            .enumerate()
            .filter_map(|(i, o)| o.near_miss.map(|(rho, z, w)| (i, rho, z, w)))
            .collect();
        misses.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
        let mut seeds: Vec<(Complex64, Complex64)> = Vec::new();
        for (_, _, z, w) in misses {
            if seeds.len() >= NEAR_MISS_SEEDS {
                break;
            }
            let spaced = seeds.iter().all(|(sz, sw)| {
                (sz - z).norm().min((sw - z).norm()) > NEAR_MISS_SPACING
                    && (sz - w).norm().min((sw - w).norm()) > NEAR_MISS_SPACING
            });
            if spaced {
                seeds.push((z, w));
            }
        }
        let dp = p.derivative();
        let refined: Vec<CollisionWitness> = seeds
            .par_iter()
            .filter_map(|&(z, w)| descend(p, &dp, z, w, cfg, tol))
            .filter(|(z, w)| z.norm() <= r_max && w.norm() <= r_max && (z - w).norm() > sep)
            .map(|(z, w)| CollisionWitness::evaluate(p, z, w))
            .filter(|c| c.residual <= tol)
            .collect();
        if !refined.is_empty() {
            notes.push(format!(
                "{} collisions recovered by descent from near-boundary pairs",
                refined.len()
            ));
        }
        candidates = refined;
    }

    let witnesses = canonical_witnesses(candidates, DEDUPE_RADIUS);
    let total = witnesses.len();
    let verdict = if total > 0 {
        OracleVerdict::CollisionFound
    } else if skipped as f64 > MAX_SKIP_FRACTION * samples.len() as f64 {
        OracleVerdict::Inconclusive
    } else {
        OracleVerdict::NoCollisionFound
    };
    if skipped > 0 {
        notes.push(format!("{skipped} samples failed root verification"));
    }
    Ok(OracleReport {
        method: OracleMethod::CollisionScan,
        verdict,
        witnesses: witnesses.into_iter().take(MAX_REPORTED_WITNESSES).collect(),
        collisions_total: total,
        resolution: cfg.clone(),
        max_winding: None,
        samples: samples.len(),
        skipped,
        notes,
    })
}
