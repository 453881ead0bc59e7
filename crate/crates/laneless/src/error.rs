//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A geometric input violates a structural invariant (too few vertices,
    /// non-convex, zero area).
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    /// An argument is outside its documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Rejection sampling could not place all neighbors in the corridor.
    #[error("spawn failed after {attempts} consecutive rejections: region too dense")]
    SpawnFailure { attempts: u32 },

    /// A configuration file or field failed validation.
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
