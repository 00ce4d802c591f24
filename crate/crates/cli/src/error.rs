use std::path::PathBuf;

use thiserror::Error;

use crate::presets::PRESETS;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown preset `{0}` (known: {known})", known = PRESETS.join(", "))]
    UnknownPreset(String),
    #[error("invalid config: {0}")]
    ConfigInvalid(String),
    #[error("{context}: {source}")]
    Module {
        context: String,
        #[source]
        source: rinorm_core::Error,
    },
    #[error("i/o failure at {}: {source}", path.display())]
    IoFailure {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// Every error is a usage, config or input problem.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

pub(crate) trait Context<T> {
    fn context(self, what: impl Into<String>) -> Result<T>;
}

impl<T> Context<T> for rinorm_core::Result<T> {
    fn context(self, what: impl Into<String>) -> Result<T> {
        self.map_err(|source| CliError::Module {
            context: what.into(),
            source,
        })
    }
}
