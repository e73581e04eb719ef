use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed edge: {0}")]
    MalformedEdge(String),
    #[error("malformed sub-box: {0}")]
    MalformedBox(String),
    #[error("invalid class sizes: {0}")]
    InvalidSizes(String),
    #[error("boundedness is only defined for J strictly inside [k], got {0}")]
    InvalidLevel(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("budget of {limit} nodes exceeded during {during}")]
    BudgetExceeded { limit: u64, during: &'static str },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
