use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("chain mismatch: {0}")]
    ChainMismatch(String),
    #[error("not principal: {0}")]
    NotPrincipal(String),
    #[error("certificate failure: {0}")]
    Certificate(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Inconsistency(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_)
            | Error::Parse(_)
            | Error::ChainMismatch(_)
            | Error::NotPrincipal(_)
            | Error::Io(_)
            | Error::Json(_) => 2,
            Error::Certificate(_) => 3,
            Error::Inconsistency(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid_input",
            Error::Parse(_) => "parse",
            Error::ChainMismatch(_) => "chain_mismatch",
            Error::NotPrincipal(_) => "not_principal",
            Error::Certificate(_) => "certificate",
            Error::Inconsistency(_) => "internal",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}
