use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("amplitude vector has (near) zero norm")]
    ZeroVector,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("encoding mismatch: {0}")]
    EncodingMismatch(String),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("matrix is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("rail pair ({m}, {n}) out of range for dimension {dim}")]
    RailOutOfRange { m: usize, n: usize, dim: usize },

    #[error("component {0} has no unitary transfer matrix")]
    NonUnitaryComponent(&'static str),

    #[error("basis is not orthonormal (residual {residual:.3e})")]
    BasisNotOrthonormal { residual: f64 },

    #[error("timing error: {0}")]
    Timing(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
