//! File formats, name registries and subcommands behind the `covchan`
//! binary.

pub mod commands;
pub mod format;
pub mod params;
pub mod registry;

/// A failed command together with the process exit code it maps to.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed input or a violated constraint (exit 2).
    #[error("{0:#}")]
    Input(#[from] anyhow::Error),
    /// The requested problem has no solution (exit 3).
    #[error("{0}")]
    Empty(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Empty(_) => 3,
        }
    }
}

impl From<covchan_core::Error> for CliError {
    fn from(e: covchan_core::Error) -> Self {
        CliError::Input(e.into())
    }
}

pub type CliResult<T> = Result<T, CliError>;
