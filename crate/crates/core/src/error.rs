use thiserror::Error;

/// Errors raised by q-calculus operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QError {
    /// The argument lies outside the set where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// A structural argument (index, size, configuration) is invalid.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, QError>;

pub(crate) fn domain(msg: impl Into<String>) -> QError {
    QError::Domain(msg.into())
}

pub(crate) fn invalid(msg: impl Into<String>) -> QError {
    QError::InvalidArgument(msg.into())
}
