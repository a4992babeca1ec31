//! Exact multivariate polynomials over the rationals and polynomial matrices.

mod io;
mod matrix;
mod mpoly;
mod registry;

pub use io::{parse_poly, poly_from_json, poly_to_json};
pub use matrix::{PolyMatrix, LAPLACE_MAX};
pub use mpoly::{MPoly, Monomial};
pub use registry::{VarClass, VarRegistry};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("polynomials live in different variable registries")]
    RegistryMismatch,
    #[error("expected {expected} variables, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("variable index {0} out of range")]
    VariableOutOfRange(usize),
    #[error("duplicate variable name {0}")]
    DuplicateVariable(String),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("divisor does not divide the dividend exactly")]
    NotDivisible,
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("matrix of size {size} exceeds the limit {max}")]
    TooLarge { size: usize, max: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
