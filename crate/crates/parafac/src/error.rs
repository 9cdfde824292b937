//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by constructions, checks, and serialization.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on the inputs is violated. The message names the
    /// violated relation (e.g. `"groups (16) must divide out_channels (4)"`).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A linear system was too ill-conditioned to solve reliably.
    #[error("numerically singular: {0}")]
    Singular(String),

    /// An iterative scheme failed to converge.
    #[error("did not converge: {0}")]
    NonConvergence(String),

    /// Z-transform evaluated at a pole (z = 0 with causal taps present).
    #[error("pole at z = 0: {0}")]
    Pole(String),

    /// A desk-scale size guard was exceeded.
    #[error("resource guard exceeded: {0}")]
    ResourceGuard(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    /// Malformed serialized data (bad base64, wrong payload length, ...).
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
