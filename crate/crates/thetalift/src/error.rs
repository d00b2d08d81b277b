use thiserror::Error;

/// Errors raised by the library. Every variant carries enough context to be
/// printed directly by the command-line front end.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("insufficient precision: {0}")]
    Precision(String),
    #[error("singular Gram matrix")]
    Singular,
    #[error("lattice is indefinite; a definite lattice is required")]
    Indefinite,
    #[error("non-generic chamber witness: {0}")]
    NonGeneric(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
