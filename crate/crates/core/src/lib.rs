//! Univalence certification for quartics of the form `q((z + a)^2)`.
//!
//! - [`polycore`]: polynomial arithmetic (exact and complex) and root finding
//! - [`decompose`]: recovering `(a, q)` from quartic coefficients
//! - [`certify`]: the collision factorization and the disc/hyperbola argument
//! - [`oracle`]: structure-blind numerical checks (collision scan, boundary
//!   simplicity, winding counts)
//! - [`report`], [`sweep`], [`plot`]: the pieces the command line front end
//!   assembles

// `!(x > 0.0)` is used on purpose throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod certify;
pub mod decompose;
pub mod oracle;
pub mod plot;
pub mod polycore;
pub mod report;
pub mod sweep;
