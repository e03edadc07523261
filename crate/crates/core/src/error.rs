use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch { left: Vec<usize>, right: Vec<usize> },

    #[error("invalid degree {0}: must be at least 1")]
    InvalidDegree(usize),

    #[error("empty factor list")]
    EmptyFactors,

    #[error("zero factor in slot {0}: tangent space undefined at the cone point")]
    ZeroFactor(usize),

    #[error("non-finite value at {0}")]
    NonFinite(String),

    #[error("input is not real (max imaginary part {0:e})")]
    NotReal(f64),

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid field `{field}`: {message}")]
    Format { field: String, message: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn format(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Format {
            field: field.into(),
            message: message.into(),
        }
    }
}
