use wdeg_core::Error;

use crate::parse::ParseError;

/// Failure of a command, mapped to the process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{which}: {source}")]
    Parse { which: &'static str, source: ParseError },
    #[error("{0}")]
    Domain(Error),
    #[error("{0}")]
    Precision(Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Parse { .. } => 3,
            Self::Precision(_) => 4,
            Self::Domain(_) | Self::Usage(_) => 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::PrecisionExhausted { .. } => Self::Precision(e),
            _ => Self::Domain(e),
        }
    }
}
