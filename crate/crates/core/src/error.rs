use thiserror::Error;

/// Errors raised by the library. Verification *failures* are not errors;
/// they are reported as data in the various report types.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument outside the operation's domain (zero polynomial, modulus 0, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// Malformed input documents.
    #[error("parse error: {0}")]
    Parse(String),
    /// `M^t J M` is not a scalar multiple of `J`.
    #[error("not a similitude: {0}")]
    NotSimilitude(String),
    /// A documented precondition of an operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
