use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpannerError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("coordinate {value} is not finite")]
    NonFinite { value: f64 },

    #[error("point set is empty")]
    EmptyPointSet,

    #[error("points {first} and {second} coincide")]
    DuplicatePoint { first: usize, second: usize },

    #[error("vertex index {index} out of range for {len} vertices")]
    InvalidIndex { index: usize, len: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("graph is not connected")]
    Disconnected,

    #[error("graph is not a tree: {0}")]
    NotATree(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("search space too large: {0}")]
    TooLarge(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, SpannerError>;

pub(crate) fn invalid(msg: impl Into<String>) -> SpannerError {
    SpannerError::InvalidParameter(msg.into())
}
