use std::io;
use std::path::PathBuf;

use pbswanson::{ParamError, PolyGaussError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid parameters: {0}")]
    Param(#[from] ParamError),
    #[error("{0}")]
    Config(String),
    #[error("computation failed: {0}")]
    Compute(#[from] PolyGaussError),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("could not write output: {0}")]
    Write(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Param(_) | CliError::Config(_) | CliError::Compute(_) => 2,
            CliError::Io { .. } | CliError::Write(_) => 3,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Write(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Write(e.to_string())
    }
}
