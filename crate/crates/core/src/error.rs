use thiserror::Error;

/// Errors raised by the learnability library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("invalid class: {0}")]
    InvalidClass(String),

    #[error("the hypothesis class is empty")]
    EmptyClass,

    #[error("class has {rows} rows but this computation supports at most {cap}")]
    TooManyRows { rows: usize, cap: usize },

    #[error("the sample is empty")]
    EmptySample,

    #[error("value {0} lies outside [-1, 1]")]
    OutOfRange(f64),

    #[error("certificate rejected: {0}")]
    Certificate(String),

    #[error("malformed document: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
