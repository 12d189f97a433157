use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("not supported: {0}")]
    Unsupported(String),
}

impl Error {
    /// Process exit code: 1 bad input, 2 cap exceeded, 3 internal invariant failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) | Error::Parse(_) | Error::Dimension(_) | Error::Unsupported(_) => 1,
            Error::CapExceeded(_) => 2,
            Error::Invariant(_) => 3,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
