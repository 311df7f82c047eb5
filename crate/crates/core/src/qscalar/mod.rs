//! Exact arithmetic in Q(v), where `v` stands for `q^{1/2}`.
//!
//! Every half-integral power of `q` is an integral power of `v`, so all
//! coefficients in the crate live in one field with a single canonical form.
//! `q` is a formal parameter throughout; nothing here assumes `|q| = 1`.

mod format;
mod laurent;
mod scalar;

use thiserror::Error;

pub use format::{format_poly, parse_poly};
pub use laurent::LaurentPoly;
pub use scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at v = {0}")]
    Pole(String),
    #[error("malformed scalar: {0:?}")]
    Parse(String),
}
