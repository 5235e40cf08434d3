use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] dialogue_vad::Error),

    #[error("missing {}: run `dvad {command}` first", artifact.display())]
    MissingUpstream {
        artifact: PathBuf,
        command: &'static str,
    },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    /// 1 for bad input or configuration, 2 for internal invariant violations.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invariant(_) => 2,
            _ => 1,
        }
    }
}

pub(crate) fn io_error(path: impl Into<PathBuf>, source: std::io::Error) -> CliError {
    CliError::Core(dialogue_vad::Error::Io {
        path: path.into(),
        source,
    })
}
