use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("cannot access {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("malformed JSON in {path}: {detail}")]
    MalformedJson { path: PathBuf, detail: String },

    #[error("{name} = {value} is outside {range}")]
    OutOfRange { name: &'static str, value: String, range: &'static str },

    #[error(transparent)]
    Core(#[from] annulus_core::Error),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::MalformedJson { .. } => "malformed_json",
            CliError::OutOfRange { .. } => "out_of_range",
            CliError::Core(e) => e.code(),
        }
    }

    /// Process exit status: 2 for bad invocations, 1 for failed runs.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::OutOfRange { .. } | CliError::MalformedJson { .. } => 2,
            _ => 1,
        }
    }

    pub fn document(&self) -> ErrorDocument {
        ErrorDocument { error: ErrorBody { code: self.code().to_string(), message: self.to_string() } }
    }
}

/// `{ "error": { "code", "message" } }`, written to stderr on failure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorDocument {
    pub error: ErrorBody,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
}

pub type CliResult<T> = std::result::Result<T, CliError>;
