//! Error type shared by every module.

use thiserror::Error;

/// Everything that can go wrong while building or evaluating an object.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two diagrams whose boundary words do not match were composed.
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    /// A tangle description could not be parsed.
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    /// The surgery presentation has a degenerate linking matrix.
    #[error("linking matrix is singular (nullity {nullity})")]
    NonRegular { nullity: usize },
    /// A computation would exceed a built-in size limit.
    #[error("computation exceeds the supported range: {0}")]
    Budget(String),
    /// Invalid argument supplied by a caller.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A linear system that should be solvable is inconsistent.
    #[error("inconsistent system: {0}")]
    Inconsistent(String),
    /// The requested feature is outside what this implementation covers.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// Stable machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::BoundaryMismatch(_) => "boundary_mismatch",
            Error::Parse { .. } => "parse_error",
            Error::NonRegular { .. } => "non_regular",
            Error::Budget(_) => "budget_exceeded",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Inconsistent(_) => "inconsistent",
            Error::Unsupported(_) => "unsupported",
        }
    }
}

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
