use std::fmt;

use thiserror::Error;

/// Why a command failed, and which exit code that maps to.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad command line (unknown subcommand, missing argument, ...).
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    /// The document parsed but does not match the problem schema.
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    /// Rejected by the computational layer (bad group data, precondition violated, ...).
    #[error(transparent)]
    Input(kdilate_core::Error),
    /// The computation could not reach a definite answer.
    #[error(transparent)]
    Undetermined(kdilate_core::Error),
}

impl CliError {
    pub fn schema(path: impl fmt::Display, message: impl Into<String>) -> Self {
        Self::Schema { path: path.to_string(), message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Undetermined(_) => EXIT_UNRESOLVED,
            _ => EXIT_INPUT,
        }
    }
}

impl From<kdilate_core::Error> for CliError {
    fn from(e: kdilate_core::Error) -> Self {
        match e {
            kdilate_core::Error::StabilizationCapExceeded { .. } => Self::Undetermined(e),
            other => Self::Input(other),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends " at line L column C"; it is reported separately
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_string(),
            None => message,
        };
        Self::Json { line: e.line(), column: e.column(), message }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNRESOLVED: i32 = 3;
