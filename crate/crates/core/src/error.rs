use thiserror::Error as ThisError;

#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum Error {
    #[error("dimension mismatch between {left} (dim {left_dim}) and {right} (dim {right_dim})")]
    DimensionMismatch { left: String, left_dim: usize, right: String, right_dim: usize },

    #[error("cannot compose: codomain {codomain} does not match domain {domain}")]
    SpaceMismatch { codomain: String, domain: String },

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("group of order {order} exceeds the limit {limit}; raise the limit to proceed")]
    OrderLimit { order: usize, limit: usize },

    #[error("{what} rejected: {reason}")]
    Rejected { what: String, reason: String },

    #[error("map is not idempotent: {0}")]
    NotIdempotent(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("ill-defined linear assignment: {0}")]
    IllDefined(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn rejected(what: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Rejected { what: what.into(), reason: reason.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
