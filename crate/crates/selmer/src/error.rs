use selmer_core::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 64 usage, 2 refused precondition, 1 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 64,
            CliError::Core(Error::Parse(_)) => 64,
            CliError::Core(Error::Precondition(_) | Error::Budget { .. } | Error::Domain(_)) => 2,
            CliError::Internal(_) | CliError::Io(_) => 1,
        }
    }
}
