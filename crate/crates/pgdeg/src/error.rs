use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("format error: {0}")]
    Format(String),
    #[error("validation failed: {0}")]
    Invalid(String),
    #[error("the empty set is not closed")]
    EmptyNotClosed,
    #[error("empty partial group")]
    EmptyPartialGroup,
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("method disagreement: {0}")]
    Disagreement(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Format(_) | Error::Io(_) | Error::Json(_) | Error::Unsupported(_) => 2,
            Error::Budget(_) => 3,
            _ => 1,
        }
    }
}
