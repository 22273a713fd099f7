use thiserror::Error;

/// Crate-wide error type. Variants are grouped by the kind of contract that
/// was broken rather than by module.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("not bihomogeneous: {0}")]
    NotBihomogeneous(String),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("entries must be linear: {0}")]
    NotLinear(String),

    #[error("differentials do not compose to zero at position {position}")]
    ComposeNonzero { position: usize },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("internal identity check failed: {0}")]
    IdentityCheck(String),

    #[error("negative value in alternating sum: {0}")]
    NegativeDimension(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
