use thiserror::Error;

/// Errors raised by construction and analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("degenerate geometry: {0}")]
    Degenerate(String),
    #[error("empty input: {0}")]
    Empty(String),
    #[error("size cap exceeded: {requested} elements requested, cap is {cap}")]
    CapExceeded { requested: u128, cap: u128 },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
