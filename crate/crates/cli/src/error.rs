use std::fmt::Display;

/// Failures of a command. Parse and IO problems exit with 3; mathematical
/// failures found while building a model exit with 1.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid model file at {at}: {message}")]
    Schema { at: String, message: String },
    #[error("{check} failed: {source}")]
    Invalid { check: String, source: hypercal_core::Error },
    #[error("{0}")]
    Unsupported(String),
}

impl CliError {
    pub fn schema(at: &str, message: impl Display) -> Self {
        CliError::Schema { at: at.into(), message: message.to_string() }
    }

    pub fn invalid(check: &str, source: hypercal_core::Error) -> Self {
        CliError::Invalid { check: check.into(), source }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Schema { .. } => crate::exit::PARSE,
            CliError::Invalid { .. } | CliError::Unsupported(_) => crate::exit::FAILURE,
        }
    }
}
