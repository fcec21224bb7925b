use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
    #[error("value out of range: {0}")]
    Range(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("pole at {0}")]
    Pole(String),
    #[error("series did not converge: {0}")]
    NoConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
