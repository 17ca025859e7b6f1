//! Complex and exact-rational polynomial arithmetic and root finding.

mod poly;
mod roots;
pub mod text;

use num_complex::Complex64;
use thiserror::Error;

pub use poly::{rational_to_f64, Coeff, Poly, MAX_COMPOSE_DEGREE};
pub use roots::{roots, RootSet, CLUSTER_RADIUS, DEFAULT_ROOT_TOL, MAX_ITERATIONS};
pub use text::{parse_poly, ParseError, ParsedPoly};

pub(crate) use roots::{newton_polish, simultaneous_roots};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyError {
    #[error("non-finite {0}")]
    NonFinite(&'static str),
    #[error("composition degree {degree} exceeds cap {cap}")]
    ComposeTooLarge { degree: usize, cap: usize },
    #[error("root finding needs degree >= 1")]
    ConstantPolynomial,
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("root iteration did not reach tolerance (residuals {residuals:?})")]
    NonConvergence {
        best: Vec<Complex64>,
        residuals: Vec<f64>,
    },
}
