use thiserror::Error;

use crate::ginv::InverseKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("dual number is not appreciable (|standard part| = {magnitude:e})")]
    NotAppreciable { magnitude: f64 },

    #[error("standard part is singular")]
    SingularStandardPart,

    #[error("{what} did not converge within {sweeps} sweeps")]
    ConvergenceFailure { what: &'static str, sweeps: usize },

    #[error("matrix does not have index one")]
    NotIndexOne,

    #[error("the {kind} does not exist for this matrix")]
    InverseNotExists { kind: InverseKind },

    #[error("tolerance breach: {0}")]
    ToleranceBreach(String),
}

impl Error {
    /// Stable machine-readable identifier, used in CLI reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ShapeMismatch { .. } => "SHAPE_MISMATCH",
            Error::NotAppreciable { .. } => "NOT_APPRECIABLE",
            Error::SingularStandardPart => "SINGULAR_STANDARD_PART",
            Error::ConvergenceFailure { .. } => "CONVERGENCE_FAILURE",
            Error::NotIndexOne => "NOT_INDEX_ONE",
            Error::InverseNotExists { .. } => "INVERSE_NOT_EXISTS",
            Error::ToleranceBreach(_) => "TOLERANCE_BREACH",
        }
    }

    pub(crate) fn shape(op: &'static str, left: (usize, usize), right: (usize, usize)) -> Self {
        Error::ShapeMismatch { op, left, right }
    }
}
