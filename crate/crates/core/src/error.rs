use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("homomorphism is not well defined: {0}")]
    IllDefined(String),
    #[error("recovery failed: {0}")]
    Recovery(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
