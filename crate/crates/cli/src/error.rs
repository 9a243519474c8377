use thiserror::Error;

/// Failure classes of a run. Each maps to one process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("model error: {0}")]
    Model(qtard::Error),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub const USAGE: i32 = 2;
    pub const MODEL: i32 = 3;
    pub const IO: i32 = 4;

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => Self::USAGE,
            CliError::Model(_) => Self::MODEL,
            CliError::Io(_) => Self::IO,
        }
    }
}

/// Parameter problems reported by the library are usage errors; numerical
/// breakdowns (degeneracy, instability, identification) are model errors.
impl From<qtard::Error> for CliError {
    fn from(e: qtard::Error) -> Self {
        use qtard::Error as E;
        match e {
            E::InvalidArgument(_)
            | E::InvalidTruncation(..)
            | E::TooLarge { .. }
            | E::InvalidIndex(_) => CliError::Usage(e.to_string()),
            _ => CliError::Model(e),
        }
    }
}
