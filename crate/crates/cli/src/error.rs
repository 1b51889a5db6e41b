use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments or a parameter outside an operation's domain.
    #[error("{0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("manifest error: {0}")]
    Manifest(#[from] serde_json::Error),
}

impl CliError {
    /// 1 for I/O failures, 2 for usage and domain errors.
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(2),
            CliError::Io(_) | CliError::Manifest(_) => ExitCode::from(1),
        }
    }
}

impl From<splitwalk::WalkError> for CliError {
    fn from(e: splitwalk::WalkError) -> Self {
        CliError::Usage(e.to_string())
    }
}
