use thiserror::Error;

/// A syntax error with the byte offset at which it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at position {position}")]
pub struct ParseError {
    pub message: String,
    pub position: usize,
}

impl ParseError {
    pub fn new(message: impl Into<String>, position: usize) -> Self {
        ParseError {
            message: message.into(),
            position,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("argument must be finite")]
    InfiniteArgument,
    #[error("argument must be strictly positive")]
    NotPositive,
    #[error("label set is not a subset of the index set: `{0}` missing")]
    NotSubset(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("inconsistent evaluations: {0}")]
    Inconsistent(String),
    #[error("underdetermined: {0}")]
    Underdetermined(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
