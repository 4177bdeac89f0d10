use thiserror::Error;

/// Failure classes, each with its own process exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    Resource(String),
    #[error("{0}")]
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Resource(_) => 4,
            CliError::Mismatch(_) => 5,
        }
    }
}

impl From<signsum::Error> for CliError {
    fn from(e: signsum::Error) -> Self {
        use signsum::Error as E;
        match e {
            E::Parse { .. } => CliError::Parse(e.to_string()),
            E::Range { .. } | E::Precondition(_) => CliError::Precondition(e.to_string()),
            E::ResourceLimit { .. } => CliError::Resource(e.to_string()),
        }
    }
}
