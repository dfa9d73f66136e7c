use thiserror::Error;

pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_TOLERANCE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_SPEC: i32 = 65;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("malformed spec: {0}")]
    Spec(String),
    #[error(transparent)]
    Domain(#[from] rothyp::Error),
    #[error("tolerance check failed: {0}")]
    Tolerance(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => EXIT_USAGE,
            Self::Spec(_) => EXIT_SPEC,
            Self::Domain(rothyp::Error::Unclassifiable(_)) => EXIT_TOLERANCE,
            Self::Domain(_) | Self::Io(_) => EXIT_DOMAIN,
            Self::Tolerance(_) => EXIT_TOLERANCE,
        }
    }
}
