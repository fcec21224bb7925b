use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Numeric(#[from] hyperspinor_core::error::Error),
    #[error("output: {0}")]
    Output(String),
}

pub type CliResult<T> = std::result::Result<T, CliError>;
