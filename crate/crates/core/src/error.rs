use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("negative budget: eps = {0}")]
    NegativeEps(f64),

    #[error("measure is empty")]
    EmptyMeasure,

    #[error("total masses differ: {0} vs {1}")]
    MassMismatch(f64, f64),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("instance too large: {what} = {size} exceeds cap {cap}")]
    TooLarge { what: &'static str, size: usize, cap: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("format error: {0}")]
    Format(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameter(msg.into()))
}
