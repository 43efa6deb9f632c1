use thiserror::Error;

/// Errors raised by the algorithms in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A precondition on the arguments was violated.
    #[error("usage error: {0}")]
    Usage(String),

    /// Polynomial or file text could not be parsed.
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    /// A serialized value was structurally valid but semantically wrong.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// A long-running computation hit its deadline.
    #[error("computation interrupted: deadline exceeded")]
    Interrupted,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}
