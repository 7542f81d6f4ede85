use partial_search_core::Error as CoreError;
use thiserror::Error;

/// Failures surfaced to the user, each with a fixed exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad geometry or arguments the engines reject.
    #[error("{0}")]
    Invalid(CoreError),
    /// Arguments that are well-formed but unusable.
    #[error("{0}")]
    Usage(String),
    /// The dense engine was asked for more items than its cap.
    #[error("{0}")]
    Cap(CoreError),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot serialize output: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// Process exit code for this failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) | CliError::Usage(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Io(_) | CliError::Json(_) => 1,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::CapExceeded { .. } => CliError::Cap(e),
            _ => CliError::Invalid(e),
        }
    }
}
