use thiserror::Error;

use crate::modules::GradedCell;

/// Errors surfaced by the engine. Budget overruns are recoverable by
/// shrinking the window; parameter-condition errors mean the requested
/// construction does not exist for the given family parameters.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("cell {cell:?} has more than {cap} basis elements; shrink the window or raise the budget")]
    CellBudgetExceeded { cell: GradedCell, cap: usize },

    #[error("no degeneracy: {0}")]
    NoDegeneracy(String),

    #[error("singular system solution space has dimension {dim}, expected 1")]
    AmbiguousSolution { dim: usize },

    #[error("vector is not homogeneous in the bi-grading")]
    NotHomogeneous,

    #[error("non-integral eigenvalue: {0}")]
    NonIntegralEigenvalue(String),

    #[error("an exponent window is required for the lowering-side exponential")]
    WindowRequired,

    #[error("invalid base label: {0}")]
    InvalidBase(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("scalar has no rational square root")]
    NotARationalSquare,

    #[error("character tables have different windows")]
    WindowMismatch,

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, EngineError>;

impl EngineError {
    /// Process exit code used by the CLI: 2 for budget overruns, 3 for
    /// parameter-condition failures, 1 for malformed input.
    pub fn exit_code(&self) -> i32 {
        match self {
            EngineError::CellBudgetExceeded { .. } => 2,
            EngineError::Parse(_) => 1,
            _ => 3,
        }
    }
}
