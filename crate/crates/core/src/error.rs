use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// Caller violated a documented precondition.
    #[error("invalid argument: {0}")]
    Usage(String),

    /// Parameters outside the domain of a family (e.g. `|ξ| >= 1`).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("point outside chart: homogeneous coordinate {patch} vanishes")]
    OutsideChart { patch: usize },

    #[error("integer overflow computing {0}")]
    Overflow(String),

    #[error("non-finite value encountered in {0}")]
    NonFinite(String),

    #[error("degenerate geometry: {0}")]
    Degenerate(String),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
