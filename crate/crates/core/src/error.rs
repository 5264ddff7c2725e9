//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by transforms, diagnostics, and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not implemented: {0}")]
    NotImplemented(String),

    /// No admissible ridgelet order was found for the requested activation.
    /// Carries the classification trace of every order that was tried.
    #[error("admissible ridgelet construction failed: {reason}")]
    ConstructionFailed { reason: String, trace: Vec<String> },

    /// The admissibility quadrature neither converged nor diverged cleanly.
    #[error("indeterminate admissibility quadrature")]
    Indeterminate { trace: Vec<(f64, f64)> },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
