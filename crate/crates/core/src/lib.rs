//! Exact symbolic engine for q-deformed invariant theory of point pairs on
//! the projective line, and for the quantum deformation of Pascal's theorem.
//!
//! Layers, bottom up:
//! - [`qscalar`]: the coefficient field Q(v), `v^2 = q`.
//! - [`pbw`]: the coordinate algebra on `x_i, y_i` with PBW normal forms.
//! - [`uq`]: the `U_q(sl(2))` action and the invariance predicate.
//! - [`covariants`]: brackets, quadratic forms, Jacobian and combinant.
//! - [`pascal`]: the combinant-of-Jacobians linear systems per hexagon.
//! - [`classical`]: exact-rational checks of the `q = 1` geometry.
//! - [`text`]: expression parser and printer.

pub mod classical;
pub mod covariants;
pub mod pascal;
pub mod pbw;
pub mod qscalar;
pub mod text;
pub mod uq;

pub use covariants::{bracket, combinant, jacobian, make_f, MiddleConvention, QuadraticForm};
pub use pbw::{Algebra, Generator, Kind, Monomial, NCPolynomial};
pub use qscalar::{LaurentPoly, Scalar};
pub use uq::{apply, is_invariant, ActionOperator};
