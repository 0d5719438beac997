use scarf_core::ScarfError;
use thiserror::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_INVALID_INPUT: u8 = 2;
pub const EXIT_IO: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },

    #[error("could not encode output: {0}")]
    Encode(String),

    #[error(transparent)]
    Core(#[from] ScarfError),
}

impl CliError {
    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            context: context.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => EXIT_INVALID_INPUT,
            CliError::Io { .. } | CliError::Encode(_) => EXIT_IO,
            CliError::Core(e) => match e {
                ScarfError::Parameter(_)
                | ScarfError::Domain(_)
                | ScarfError::Regime { .. }
                | ScarfError::Degenerate(_)
                | ScarfError::Consistency(_)
                | ScarfError::Singularity { .. } => EXIT_INVALID_INPUT,
                _ => EXIT_CHECK_FAILED,
            },
        }
    }
}
