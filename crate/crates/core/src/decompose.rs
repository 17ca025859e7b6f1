//! Recover `p(z) = q((z + a)^2)` from quartic coefficients.
//!
//! Writing `p = b4 z^4 + b3 z^3 + b2 z^2 + b1 z + b0` and
//! `q(t) = alpha t^2 + beta t + gamma`, matching coefficients gives
//!
//! ```text
//! a     = b3 / (4 b4)
//! alpha = b4
//! beta  = b2 - 6 a^2 b4
//! b1    = 4 a^3 b4 + 2 a beta        (consistency)
//! gamma = b0 - a^4 b4 - a^2 beta
//! ```
//!
//! Rational inputs are decomposed exactly; anything else goes through the
//! floating path with a relative tolerance.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::certify::FamilyParams;
use crate::polycore::text::format_rational;
use crate::polycore::{ParsedPoly, Poly};

pub const DEFAULT_DECOMPOSE_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DecomposeError {
    #[error("expected a quartic, got degree {0}")]
    WrongDegree(usize),
    #[error("outer quadratic is degenerate (alpha = 0)")]
    DegenerateOuter,
    #[error("non-finite coefficient")]
    NonFinite,
}

/// Exact parts of a decomposition verified in rational arithmetic.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactQuad {
    pub a: BigRational,
    pub q: Poly<BigRational>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadDecomposition {
    /// Inner shift: the quartic is `q((z + a)^2)`.
    pub a: f64,
    /// Outer quadratic, ascending `(gamma, beta, alpha)`.
    pub q: [f64; 3],
    pub exact: Option<ExactQuad>,
}

impl QuadDecomposition {
    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn outer(&self) -> Poly<Complex64> {
        Poly::from_real(&self.q)
    }

    pub fn recompose(&self) -> Poly<Complex64> {
        let inner = Poly::shifted_square(Complex64::new(self.a, 0.0));
        self.outer().compose(&inner).expect("degree 4")
    }
}

impl Serialize for QuadDecomposition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            a: f64,
            q: &'a [f64; 3],
            exact: bool,
            a_exact: Option<String>,
            q_exact: Option<Vec<String>>,
        }
        Repr {
            a: self.a,
            q: &self.q,
            exact: self.is_exact(),
            a_exact: self.exact.as_ref().map(|e| format_rational(&e.a)),
            q_exact: self
                .exact
                .as_ref()
                .map(|e| e.q.coeffs().iter().map(format_rational).collect()),
        }
        .serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Decomposition {
    Composite(QuadDecomposition),
    NotDecomposable { reason: String },
}

impl Decomposition {
    pub fn composite(&self) -> Option<&QuadDecomposition> {
        match self {
            Decomposition::Composite(d) => Some(d),
            Decomposition::NotDecomposable { .. } => None,
        }
    }
}

/// Decompose a parsed quartic, exactly when its coefficients are rational.
pub fn decompose_quartic(p: &ParsedPoly, tol: f64) -> Result<Decomposition, DecomposeError> {
    match p {
        ParsedPoly::Exact(p) => decompose_exact(p),
        ParsedPoly::Float(p) => decompose_float(p, tol),
    }
}

pub fn decompose_exact(p: &Poly<BigRational>) -> Result<Decomposition, DecomposeError> {
    if p.degree() != 4 {
        return Err(DecomposeError::WrongDegree(p.degree()));
    }
    let int = |n: i64| BigRational::from_integer(BigInt::from(n));
    let b: Vec<BigRational> = (0..5).map(|k| p.coeff(k)).collect();
    let a = &b[3] / (int(4) * &b[4]);
    let a2 = &a * &a;
    let alpha = b[4].clone();
    let beta = &b[2] - int(6) * &a2 * &b[4];
    let expected_b1 = int(4) * &a2 * &a * &b[4] + int(2) * &a * &beta;
    if expected_b1 != b[1] {
        return Ok(Decomposition::NotDecomposable {
            reason: format!(
                "linear coefficient {} differs from 4a^3*b4 + 2a*beta = {}",
                format_rational(&b[1]),
                format_rational(&expected_b1)
            ),
        });
    }
    let gamma = &b[0] - &a2 * &a2 * &b[4] - &a2 * &beta;
    let q = Poly::new(vec![gamma, beta, alpha]);
    let to_f = |r: &BigRational| r.to_f64().unwrap_or(f64::NAN);
    let floats = [to_f(&q.coeff(0)), to_f(&q.coeff(1)), to_f(&q.coeff(2))];
    if floats.iter().any(|v| !v.is_finite()) || !to_f(&a).is_finite() {
        return Err(DecomposeError::NonFinite);
    }
    Ok(Decomposition::Composite(QuadDecomposition {
        a: to_f(&a),
        q: floats,
        exact: Some(ExactQuad { a, q }),
    }))
}

pub fn decompose_float(p: &Poly<Complex64>, tol: f64) -> Result<Decomposition, DecomposeError> {
    if p.degree() != 4 {
        return Err(DecomposeError::WrongDegree(p.degree()));
    }
    if p.coeffs().iter().any(|c| !c.is_finite()) {
        return Err(DecomposeError::NonFinite);
    }
    let scale = p.max_coeff_abs();
    if !p.is_real(tol * scale) {
        return Ok(Decomposition::NotDecomposable {
            reason: "complex coefficients (only real quartics are decomposed)".into(),
        });
    }
    let b: Vec<f64> = (0..5).map(|k| p.coeff(k).re).collect();
    let a = b[3] / (4.0 * b[4]);
    let beta = b[2] - 6.0 * a * a * b[4];
    let expected_b1 = 4.0 * a.powi(3) * b[4] + 2.0 * a * beta;
    let mismatch = (expected_b1 - b[1]).abs();
    if mismatch > tol * scale {
        return Ok(Decomposition::NotDecomposable {
            reason: format!(
                "linear coefficient {} differs from 4a^3*b4 + 2a*beta = {} by {:e}",
                b[1], expected_b1, mismatch
            ),
        });
    }
    let gamma = b[0] - a.powi(4) * b[4] - a * a * beta;
    Ok(Decomposition::Composite(QuadDecomposition {
        a,
        q: [gamma, beta, b[4]],
        exact: None,
    }))
}

/// `(a, alpha, C = beta / alpha, gamma)`; `-C` is the root sum of `q`.
pub fn family_params(d: &QuadDecomposition) -> Result<FamilyParams, DecomposeError> {
    let c = match &d.exact {
        Some(e) => {
            let alpha = e.q.coeff(2);
            if alpha.is_zero() {
                return Err(DecomposeError::DegenerateOuter);
            }
            (e.q.coeff(1) / alpha).to_f64().unwrap_or(f64::NAN)
        }
        None => {
            if d.q[2] == 0.0 {
                return Err(DecomposeError::DegenerateOuter);
            }
            d.q[1] / d.q[2]
        }
    };
    FamilyParams::new(d.a, d.q[2], c, d.q[0]).map_err(|_| DecomposeError::NonFinite)
}
