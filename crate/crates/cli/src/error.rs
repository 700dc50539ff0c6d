use fibprod_core::Error;

/// Failure of a command, carrying its exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad arguments or configuration; exit 2.
    #[error("{0}")]
    Usage(String),
    /// Something checked and came out false; exit 1.
    #[error("{0}")]
    Mismatch(String),
    /// Missing file, network, or a computation that could not finish; exit 3.
    #[error("{0}")]
    Environment(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Environment(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::CancellationFailure { .. } | Error::FieldMismatch => CliError::Mismatch(e.to_string()),
            Error::Inconclusive(_) => CliError::Environment(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}
