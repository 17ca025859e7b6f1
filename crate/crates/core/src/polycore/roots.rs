use std::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use super::{Poly, PolyError};

pub const DEFAULT_ROOT_TOL: f64 = 1e-10;
pub const MAX_ITERATIONS: usize = 500;
pub const POLISH_STEPS: usize = 10;
/// Roots closer than this (relative to `max(1, |r|)`) are merged into one cluster.
pub const CLUSTER_RADIUS: f64 = 1e-7;

/// Roots of a polynomial, grouped into clusters with multiplicity.
///
/// `residuals[k]` is `|p(roots[k])| / max|coeff|`.
#[derive(Clone, Debug, Serialize)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    pub multiplicities: Vec<usize>,
    pub residuals: Vec<f64>,
    pub tol: f64,
}

impl RootSet {
    pub fn count_with_multiplicity(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    /// Roots repeated according to multiplicity.
    pub fn expanded(&self) -> Vec<Complex64> {
        self.roots
            .iter()
            .zip(&self.multiplicities)
            .flat_map(|(r, &m)| std::iter::repeat_n(*r, m))
            .collect()
    }
}

/// Find all roots of `p` by Aberth-Ehrlich iteration, polish each with
/// Newton steps, cluster near-coincident roots, and certify residuals.
pub fn roots(p: &Poly<Complex64>, tol: f64) -> Result<RootSet, PolyError> {
    if p.degree() == 0 {
        return Err(PolyError::ConstantPolynomial);
    }
    if !(tol > 0.0) {
        return Err(PolyError::InvalidTolerance(tol));
    }
    if p.coeffs().iter().any(|c| !c.is_finite()) {
        return Err(PolyError::NonFinite("coefficient"));
    }
    let scale = p.max_coeff_abs();

    let mut approx = simultaneous_roots(p.coeffs());
    for r in approx.iter_mut() {
        *r = newton_polish(p, *r);
    }

    let (mut centers, mut mults) = cluster(&approx);
    if p.is_real(0.0) {
        pair_conjugates(&mut centers, &mults);
    }
    sort_canonical(&mut centers, &mut mults);

    let residuals: Vec<f64> = centers.iter().map(|r| p.eval(r).norm() / scale).collect();
    if residuals.iter().any(|r| !(*r <= tol)) {
        return Err(PolyError::NonConvergence {
            best: approx,
            residuals,
        });
    }
    Ok(RootSet {
        roots: centers,
        multiplicities: mults,
        residuals,
        tol,
    })
}

/// Raw simultaneous iteration, no polishing or clustering. Always returns
/// `degree` approximations (the best iterate if the cap is hit).
pub(crate) fn simultaneous_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    if n == 1 {
        return vec![-monic[0]];
    }
    let radius = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, TAU * k as f64 / n as f64 + 0.4))
        .collect();
    let abs_coeffs: Vec<f64> = monic.iter().map(|c| c.norm()).collect();

    let mut done = vec![false; n];
    for _ in 0..MAX_ITERATIONS {
        let mut all_done = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let zi = z[i];
            let (p, dp, bound) = horner_with_bound(&monic, &abs_coeffs, zi);
            // value indistinguishable from rounding noise
            if p.norm() <= 8.0 * f64::EPSILON * bound {
                done[i] = true;
                continue;
            }
            all_done = false;
            let ratio = p / dp;
            let mut sum = Complex64::zero();
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    sum += (zi - zj).inv();
                }
            }
            let delta = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if delta.is_finite() {
                z[i] = zi - delta;
                if delta.norm() <= f64::EPSILON * z[i].norm() {
                    done[i] = true;
                }
            } else {
                // nudge off a coincidence with another iterate
                z[i] = zi + Complex64::new(1e-8, 1e-8) * (1.0 + zi.norm());
            }
        }
        if all_done {
            break;
        }
    }
    z
}

fn horner_with_bound(
    coeffs: &[Complex64],
    abs_coeffs: &[f64],
    z: Complex64,
) -> (Complex64, Complex64, f64) {
    let r = z.norm();
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    let mut bound = 0.0;
    for (c, a) in coeffs.iter().zip(abs_coeffs).rev() {
        dp = dp * z + p;
        p = p * z + c;
        bound = bound * r + a;
    }
    (p, dp, bound)
}

pub(crate) fn newton_polish(p: &Poly<Complex64>, mut z: Complex64) -> Complex64 {
    let (mut value, mut slope) = p.eval_with_derivative(z);
    for _ in 0..POLISH_STEPS {
        if value.is_zero() || slope.is_zero() {
            break;
        }
        let next = z - value / slope;
        let (nv, ns) = p.eval_with_derivative(next);
        if !(nv.norm() < value.norm()) {
            break;
        }
        let step = (next - z).norm();
        z = next;
        value = nv;
        slope = ns;
        if step <= f64::EPSILON * z.norm() {
            break;
        }
    }
    z
}

fn cluster(points: &[Complex64]) -> (Vec<Complex64>, Vec<usize>) {
    let mut centers: Vec<Complex64> = Vec::new();
    let mut members: Vec<Vec<Complex64>> = Vec::new();
    for &p in points {
        let hit = centers
            .iter()
            .position(|c| (c - p).norm() <= CLUSTER_RADIUS * c.norm().max(1.0));
        match hit {
            Some(k) => {
                members[k].push(p);
                let m = members[k].len() as f64;
                centers[k] = members[k].iter().sum::<Complex64>() / m;
            }
            None => {
                centers.push(p);
                members.push(vec![p]);
            }
        }
    }
    let mults = members.iter().map(Vec::len).collect();
    (centers, mults)
}

/// Snap roots of a real polynomial into exact conjugate pairs or onto the
/// real axis.
fn pair_conjugates(roots: &mut [Complex64], mults: &[usize]) {
    let n = roots.len();
    let mut paired = vec![false; n];
    for i in 0..n {
        if paired[i] || roots[i].im <= 0.0 {
            continue;
        }
        let target = roots[i].conj();
        let partner = (0..n)
            .filter(|&j| j != i && !paired[j] && roots[j].im < 0.0 && mults[j] == mults[i])
            .min_by(|&a, &b| {
                (roots[a] - target)
                    .norm()
                    .total_cmp(&(roots[b] - target).norm())
            });
        if let Some(j) = partner {
            if (roots[j] - target).norm() <= 1e-6 * target.norm().max(1.0) {
                let avg = (roots[i] + roots[j].conj()) / 2.0;
                roots[i] = avg;
                roots[j] = avg.conj();
                paired[i] = true;
                paired[j] = true;
            }
        }
    }
    for i in 0..n {
        if !paired[i] && roots[i].im.abs() <= CLUSTER_RADIUS * roots[i].norm().max(1.0) {
            roots[i].im = 0.0;
        }
    }
}

fn sort_canonical(roots: &mut Vec<Complex64>, mults: &mut Vec<usize>) {
    let mut idx: Vec<usize> = (0..roots.len()).collect();
    idx.sort_by(|&a, &b| {
        roots[a]
            .re
            .total_cmp(&roots[b].re)
            .then(roots[a].im.total_cmp(&roots[b].im))
    });
    *roots = idx.iter().map(|&i| roots[i]).collect();
    *mults = idx.iter().map(|&i| mults[i]).collect();
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn f4() -> Poly<Complex64> {
        Poly::from_real(&[0.0, 1.0, 7.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0])
    }

    fn assert_roots(got: &RootSet, want: &[Complex64], tol: f64) {
        assert_eq!(got.count_with_multiplicity(), want.len());
        for w in want {
            let best = got
                .roots
                .iter()
                .map(|r| (r - w).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(best <= tol, "missing root {w}: nearest at {best:e}");
        }
    }

    #[test]
    fn roots_of_f4() {
        let s2 = 2f64.sqrt();
        let got = roots(&f4(), DEFAULT_ROOT_TOL).unwrap();
        assert_roots(&got, &[c(0.0, 0.0), c(-2.0, 0.0), c(-1.0, s2), c(-1.0, -s2)], 1e-10);
    }

    #[test]
    fn roots_of_f4_derivative() {
        let h = 2f64.sqrt() / 2.0;
        let got = roots(&f4().derivative(), DEFAULT_ROOT_TOL).unwrap();
        assert_roots(&got, &[c(-1.0, 0.0), c(-1.0, h), c(-1.0, -h)], 1e-10);
    }

    #[test]
    fn roots_of_z2_plus_1() {
        let got = roots(&Poly::from_real(&[1.0, 0.0, 1.0]), DEFAULT_ROOT_TOL).unwrap();
        assert_roots(&got, &[c(0.0, 1.0), c(0.0, -1.0)], 1e-14);
        // exact conjugate pairing
        assert_eq!(got.roots[0], got.roots[1].conj());
    }

    #[test]
    fn double_root_is_clustered() {
        // (z - 1)^2 (z + 2)
        let p = Poly::from_real(&[2.0, -3.0, 0.0, 1.0]);
        let got = roots(&p, DEFAULT_ROOT_TOL).unwrap();
        assert_eq!(got.count_with_multiplicity(), 3);
        let k = got.multiplicities.iter().position(|&m| m == 2).unwrap();
        assert!((got.roots[k] - c(1.0, 0.0)).norm() < 1e-7);
    }

    #[test]
    fn linear_and_constant() {
        let got = roots(&Poly::from_real(&[3.0, 2.0]), DEFAULT_ROOT_TOL).unwrap();
        assert_eq!(got.roots, vec![c(-1.5, 0.0)]);
        assert!(matches!(
            roots(&Poly::from_real(&[3.0]), DEFAULT_ROOT_TOL),
            Err(PolyError::ConstantPolynomial)
        ));
        assert!(roots(&f4(), 0.0).is_err());
    }

    #[test]
    fn complex_coefficients() {
        // (z - i)(z - 2)
        let p = Poly::new(vec![c(0.0, 2.0), c(-2.0, -1.0), c(1.0, 0.0)]);
        let got = roots(&p, DEFAULT_ROOT_TOL).unwrap();
        assert_roots(&got, &[c(0.0, 1.0), c(2.0, 0.0)], 1e-12);
    }
}
