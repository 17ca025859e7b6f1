use std::collections::HashMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use super::{OracleConfig, OracleError, OracleMethod, OracleReport, OracleVerdict};
use crate::polycore::Poly;

const MAX_RECORDED_CROSSINGS: usize = 64;

/// Images of `n` equally spaced points on `|z| = r`; closed by wrap-around.
pub fn boundary_curve(p: &Poly<Complex64>, r: f64, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|k| p.eval(&Complex64::from_polar(r, TAU * k as f64 / n as f64)))
        .collect()
}

/// Upper bound on the distance between the true image of `|z| = r` and the
/// sampled polyline, doubled so two pieces of a touching curve are caught.
///
/// The second angular derivative of `p(r e^{i theta})` is bounded by
/// `sum k^2 |c_k| r^k`; a chord deviates from its arc by at most
/// `h^2 / 8` times that.
pub fn chord_tolerance(p: &Poly<Complex64>, r: f64, n: usize) -> f64 {
    let h = TAU / n as f64;
    let second: f64 = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| (k * k) as f64 * c.norm() * r.powi(k as i32))
        .sum();
    2.0 * h * h / 8.0 * second
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Crossing {
    /// Segment indices, `first < second`.
    pub first: usize,
    pub second: usize,
    /// Position along each segment in `[0, 1]`.
    pub s: f64,
    pub t: f64,
    pub point: Complex64,
    pub distance: f64,
}

impl Crossing {
    /// Curve parameters in `[0, 1)` for a closed polyline of `n` vertices.
    pub fn parameters(&self, n: usize) -> (f64, f64) {
        (
            (self.first as f64 + self.s) / n as f64,
            (self.second as f64 + self.t) / n as f64,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimplicityReport {
    pub simple: bool,
    pub crossing_count: usize,
    /// First crossings found, in segment order.
    pub crossings: Vec<Crossing>,
    pub degenerate_segments: usize,
}

/// Check a closed polyline for pairs of non-neighbouring segments closer
/// than `tol`.
///
/// Broad phase buckets segment bounding boxes in a uniform grid sized to the
/// longest segment; narrow phase is exact segment-segment distance. Pairs
/// whose separation along the curve is within a small multiple of their
/// distance are local (a tight turn, not a self-contact) and are ignored.
pub fn is_simple(polyline: &[Complex64], tol: f64) -> Result<SimplicityReport, OracleError> {
    let n = polyline.len();
    if n < 4 {
        return Err(OracleError::TooFewVertices { need: 4, got: n });
    }
    let seg = |i: usize| (polyline[i], polyline[(i + 1) % n]);
    let lengths: Vec<f64> = (0..n).map(|i| (seg(i).1 - seg(i).0).norm()).collect();
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(0.0);
    for l in &lengths {
        prefix.push(prefix.last().unwrap() + l);
    }
    let total = prefix[n];
    let degenerate: Vec<bool> = lengths.iter().map(|&l| l <= f64::EPSILON * total).collect();
    let degenerate_segments = degenerate.iter().filter(|d| **d).count();

    let cell = lengths.iter().copied().fold(0.0, f64::max).max(tol) + 2.0 * tol;
    let mut grid: HashMap<(i64, i64), Vec<u32>> = HashMap::new();
    for (i, _) in degenerate.iter().enumerate().filter(|(_, d)| !**d) {
        let (a, b) = seg(i);
        let x0 = ((a.re.min(b.re) - tol) / cell).floor() as i64;
        let x1 = ((a.re.max(b.re) + tol) / cell).floor() as i64;
        let y0 = ((a.im.min(b.im) - tol) / cell).floor() as i64;
        let y1 = ((a.im.max(b.im) + tol) / cell).floor() as i64;
        for x in x0..=x1 {
            for y in y0..=y1 {
                grid.entry((x, y)).or_default().push(i as u32);
            }
        }
    }

    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for members in grid.values() {
        for (k, &i) in members.iter().enumerate() {
            for &j in &members[k + 1..] {
                pairs.push((i.min(j), i.max(j)));
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();

    let mut crossings = Vec::new();
    let mut crossing_count = 0;
    for (i, j) in pairs {
        let (i, j) = (i as usize, j as usize);
        if j == i + 1 || (i == 0 && j == n - 1) {
            continue;
        }
        let (a0, a1) = seg(i);
        let (b0, b1) = seg(j);
        let (distance, s, t) = segment_distance(a0, a1, b0, b1);
        if distance > tol {
            continue;
        }
        let pos_i = prefix[i] + s * lengths[i];
        let pos_j = prefix[j] + t * lengths[j];
        let along = (pos_j - pos_i).abs().min(total - (pos_j - pos_i).abs());
        if along <= 4.0 * distance.max(tol) {
            continue;
        }
        crossing_count += 1;
        if crossings.len() < MAX_RECORDED_CROSSINGS {
            crossings.push(Crossing {
                first: i,
                second: j,
                s,
                t,
                point: a0 + (a1 - a0) * s,
                distance,
            });
        }
    }
    Ok(SimplicityReport {
        simple: crossing_count == 0,
        crossing_count,
        crossings,
        degenerate_segments,
    })
}

/// Closest approach of segments `a0-a1` and `b0-b1`: `(distance, s, t)`.
fn segment_distance(a0: Complex64, a1: Complex64, b0: Complex64, b1: Complex64) -> (f64, f64, f64) {
    let d1 = a1 - a0;
    let d2 = b1 - b0;
    let cross = |u: Complex64, v: Complex64| u.re * v.im - u.im * v.re;
    let denom = cross(d1, d2);
    if denom != 0.0 {
        let r = b0 - a0;
        let s = cross(r, d2) / denom;
        let t = cross(r, d1) / denom;
        if (0.0..=1.0).contains(&s) && (0.0..=1.0).contains(&t) {
            return (0.0, s, t);
        }
    }
    // otherwise the minimum is attained at an endpoint of one segment
    let project = |p: Complex64, o: Complex64, d: Complex64| {
        let len2 = d.norm_sqr();
        if len2 == 0.0 {
            0.0
        } else {
            (((p - o) * d.conj()).re / len2).clamp(0.0, 1.0)
        }
    };
    let candidates = [
        (0.0, project(a0, b0, d2)),
        (1.0, project(a1, b0, d2)),
        (project(b0, a0, d1), 0.0),
        (project(b1, a0, d1), 1.0),
    ];
    candidates
        .iter()
        .map(|&(s, t)| (((a0 + d1 * s) - (b0 + d2 * t)).norm(), s, t))
        .min_by(|x, y| x.0.total_cmp(&y.0))
        .expect("four candidates")
}

/// Boundary-injectivity oracle: the polynomial is univalent in `|z| < r`
/// when its image of `|z| = r` is a simple closed curve.
pub fn boundary_scan(p: &Poly<Complex64>, cfg: &OracleConfig) -> Result<OracleReport, OracleError> {
    cfg.validate()?;
    if p.degree() < 1 {
        return Err(OracleError::DegreeTooSmall(p.degree()));
    }
    let n = cfg.boundary_samples;
    let mut notes = Vec::new();
    let mut verdict = OracleVerdict::NoCollisionFound;
    let mut total = 0;
    for &r in &cfg.radii {
        let curve = boundary_curve(p, r, n);
        let tol = chord_tolerance(p, r, n);
        let report = is_simple(&curve, tol)?;
        if report.degenerate_segments > 0 {
            notes.push(format!(
                "r = {r}: skipped {} zero-length segments",
                report.degenerate_segments
            ));
        }
        if !report.simple {
            verdict = OracleVerdict::BoundaryNotSimple;
            total += report.crossing_count;
            let first = &report.crossings[0];
            notes.push(format!(
                "r = {r}: {} near-contacts within {tol:e}, first at ({}, {})",
                report.crossing_count, first.point.re, first.point.im
            ));
        }
    }
    Ok(OracleReport {
        method: OracleMethod::BoundarySimplicity,
        verdict,
        witnesses: Vec::new(),
        collisions_total: total,
        resolution: cfg.clone(),
        max_winding: None,
        samples: n * cfg.radii.len(),
        skipped: 0,
        notes,
    })
}
