use thiserror::Error;

/// Errors raised by the library.
///
/// The variants line up with the command-line exit-code contract: parse and
/// size problems are usage errors, `Domain` and `Precondition` are rejected
/// inputs, `InternalConsistency` means two exact routes disagreed, and
/// `Numeric` is reserved for the floating-point solver.
#[derive(Debug, Error)]
pub enum Error {
    #[error("size mismatch: {0}")]
    Size(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("guard exceeded: {0}")]
    Guard(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
    #[error("numeric failure: {message} (residual {residual:e})")]
    Numeric { message: String, residual: f64 },
    #[error("cache error: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
