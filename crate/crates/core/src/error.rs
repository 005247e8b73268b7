use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported group D={0} (catalog has 6, 10, 15)")]
    UnsupportedGroup(u32),
    #[error("numeric error: {0}")]
    Numeric(String),
    #[error("element has a21 = 0 and no isometric circle")]
    NoCircle,
    #[error("point reduction did not terminate within {0} iterations")]
    NonTermination(usize),
    #[error("enumeration cap exceeded: requested {requested}, cap {cap}")]
    Cap { requested: usize, cap: usize },
    #[error("code center {0} is not strictly interior to the fundamental domain")]
    Center(String),
    #[error("duplicate group element (mod ±Id) in codebook: {0}")]
    Duplicate(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("tuple is not in the image of the parametrization: {0}")]
    NotInImage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
