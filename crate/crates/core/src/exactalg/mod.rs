//! Exact coefficient fields, sparse multivariate polynomials, polynomial
//! matrices and determinants.

mod content;
mod eval;
mod expvec;
mod field;
mod linalg;
mod matrix;
mod mpoly;
mod text;
mod univariate;

pub use content::{monomial_content, no_common_factor_probabilistic};
pub use eval::{CompiledMap, CompiledPoly};
pub use expvec::{monomials_of_degree, ExpVec};
pub use field::{is_prime, Field, PrimeField, Rationals, P_SMALL, P_WORK};
pub use linalg::{
    dense_det, dense_nullspace, dense_rank, nullspace_mod_p, rank_mod_p, DenseMatrix,
};
pub use matrix::{DetMethod, PolyMatrix};
pub use mpoly::{linear_change, poly_arith, ArithOp, MPoly};
pub use text::{parse_poly, parse_poly_with_header};
pub use univariate::UPoly;

use thiserror::Error;

/// Structural and arithmetic failures of the exact-algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("variable count mismatch: {0} vs {1}")]
    VarCountMismatch(usize, usize),
    #[error("coefficient field mismatch: {0}")]
    FieldMismatch(String),
    #[error("{0} is not an odd prime below 2^31")]
    NotPrime(u64),
    #[error("prime {p} is unusable: {reason}")]
    BadPrime { p: u32, reason: String },
    #[error("variable index {index} out of range for {n_vars} variables")]
    VarOutOfRange { index: usize, n_vars: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("division is not exact")]
    InexactDivision,
    #[error("matrix shape error: {0}")]
    Shape(String),
    #[error("singular matrix")]
    Singular,
    #[error("empty input: {0}")]
    Empty(String),
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
}
