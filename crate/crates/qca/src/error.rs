//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument was outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Geometrically degenerate input (coincident points, zero-size window, ...).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// The requested closed form or model combination is not available.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// The operation requires the stringent regime (rho > 1).
    #[error("not applicable: {0}")]
    NotApplicable(String),

    /// A deployment file or value failed validation.
    #[error("invalid deployment: {0}")]
    InvalidDeployment(String),

    /// Malformed on-disk data.
    #[error("parse error: {0}")]
    Parse(String),

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
