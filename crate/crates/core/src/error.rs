//! Crate-wide error type.

use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

/// Errors surfaced by region validation, estimators, and solvers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Construction or use of a region that violates its invariants.
    InvalidRegion(String),
    /// An operation was asked of a region variant that does not support it.
    Unsupported(String),
    /// Bad arguments to an operation (grids, cutoffs, preconditions).
    InvalidArgument(String),
    /// An iterative solver or quadrature failed to converge.
    NonConvergence(String),
}

impl core::fmt::Display for Error {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Error::InvalidRegion(msg) => write!(f, "invalid region: {msg}"),
            Error::Unsupported(msg) => write!(f, "unsupported operation: {msg}"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::NonConvergence(msg) => write!(f, "failed to converge: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

impl Error {
    /// Stable machine-readable kind tag, used by the CLI error stream.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidRegion(_) => "invalid_region",
            Error::Unsupported(_) => "unsupported",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::NonConvergence(_) => "non_convergence",
        }
    }
}
