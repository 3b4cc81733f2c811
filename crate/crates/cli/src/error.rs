use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, unreadable files or schema violations.
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Compute(multbound::Error),
    /// The oracle exceeded a selected bound, or a suite recorded failures.
    #[error("{0}")]
    Violation(String),
}

impl From<multbound::Error> for CliError {
    /// Out-of-range parameters and malformed expressions are the caller's fault.
    fn from(e: multbound::Error) -> Self {
        use multbound::Error as E;
        match e {
            E::Range(_) | E::Parse { .. } | E::Unknown { .. } => CliError::Usage(e.to_string()),
            e => CliError::Compute(e),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub const COMPUTE: u8 = 1;
    pub const VIOLATION: u8 = 2;
    pub const USAGE: u8 = 3;

    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn usage_from(e: multbound::Error) -> Self {
        CliError::Usage(e.to_string())
    }

    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => Self::USAGE,
            CliError::Compute(_) => Self::COMPUTE,
            CliError::Violation(_) => Self::VIOLATION,
        }
    }
}
