use std::io;
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },

    #[error("malformed JSON: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    /// A generated instance failed its own re-check.
    #[error("generated instance failed verification: {0}")]
    Unverified(String),

    #[error(transparent)]
    Math(#[from] dualmat::Error),
}

impl CliError {
    pub fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    /// Prefixes parse and validation messages with the file they came from.
    pub fn in_file(self, path: &Path) -> Self {
        match self {
            CliError::Parse(m) => CliError::Parse(format!("{}: {m}", path.display())),
            CliError::Invalid(m) => CliError::Invalid(format!("{}: {m}", path.display())),
            other => other,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "IO_ERROR",
            CliError::Parse(_) => "PARSE_ERROR",
            CliError::Invalid(_) => "INVALID_INPUT",
            CliError::Unverified(_) => "GENERATOR_UNVERIFIED",
            CliError::Math(e) => e.code(),
        }
    }

    /// 2 for anything wrong with the input itself, 1 when the mathematics
    /// says no.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Parse(_) | CliError::Invalid(_) => 2,
            CliError::Math(dualmat::Error::ShapeMismatch { .. }) => 2,
            CliError::Unverified(_) | CliError::Math(_) => 1,
        }
    }
}
