use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("structural mismatch: {0}")]
    Structural(String),

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid parameters for {entry}: {reason}")]
    Parameter { entry: String, reason: String },

    #[error("element is not idempotent")]
    NotIdempotent,

    #[error("assignment for variable {variable} lies outside its component")]
    OutsideComponent { variable: String },

    #[error("algebra fails validation: {0}")]
    InvalidAlgebra(String),

    #[error("generator is not an identity: {generator} (witness: {witness})")]
    NotAnIdentity { generator: String, witness: String },

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("resource cap exceeded at multidegree {frame}: {reason}")]
    ResourceCap { frame: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
