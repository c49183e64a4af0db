use thiserror::Error;

/// Errors raised by factorization, sketching and decomposition routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular triangular factor: zero diagonal at index {index}")]
    Singular { index: usize },
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }

    /// True for errors caused by the caller's input rather than by the numerics.
    pub fn is_argument(&self) -> bool {
        !matches!(self, Error::Numerical(_) | Error::Singular { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
