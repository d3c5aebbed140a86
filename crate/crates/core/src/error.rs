use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("parity error: {0}")]
    Parity(String),
    #[error("degenerate form: {0}")]
    DegenerateForm(String),
    #[error("object mismatch: {0}")]
    ObjectMismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid label: {0}")]
    Label(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
