//! Quantum Pascal relations: combinants of the Jacobians of opposite hexagon
//! sides, reduced onto a fixed monomial basis and solved exactly.

mod certify;
mod expressions;
mod hexagon;
pub mod linalg;
mod modular;
mod solver;

use thiserror::Error;

use crate::covariants::FormError;

pub use expressions::{
    build_expressions, combinant_of, expressions_from_pairs, side_forms, side_pairs, BasisIndex, Expression,
    ExpressionSet, Mode, SidePair, ORDERS,
};
pub use hexagon::Hexagon;
pub use linalg::{modular_rank, solve_nullspace, BareissConfig, EliminationMethod, ScalarMatrix, SolutionFamily};
pub use solver::{
    classical_limit_check, coefficient_matrix, combine, expected_alpha, expected_beta, normalize_paper12, prune_proportional,
    reproduce_theorem3, reproduce_theorem3_with, solve_hexagon, survey, ClassicalLimitReport, Coefficients, HexagonChecks,
    HexagonReport, Mismatch, Pruning, SurveyRow, Theorem3Checks, Theorem3Report,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("not a hexagon on the points 1..6: {0}")]
    BadHexagon(String),
    #[error("unknown mode {0:?}, expected paper12 or full48")]
    BadMode(String),
    #[error("paper12 mode is defined only for the hexagon (123456), got {0}")]
    Paper12NeedsIdentity(String),
    #[error("expression {expression} has monomial {monomial} outside the basis")]
    Support { expression: String, monomial: String },
    #[error("coordinates a1, a2 are not free in the solution family")]
    NotFree,
    #[error(transparent)]
    Form(#[from] FormError),
}
