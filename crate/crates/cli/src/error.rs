use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{context}: {source}")]
    Core {
        context: String,
        source: voystat_core::Error,
    },
    #[error("{0}")]
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Attaches a path or document name to library errors.
pub trait Context<T> {
    fn context(self, what: impl std::fmt::Display) -> CliResult<T>;
}

impl<T> Context<T> for voystat_core::Result<T> {
    fn context(self, what: impl std::fmt::Display) -> CliResult<T> {
        self.map_err(|source| CliError::Core {
            context: what.to_string(),
            source,
        })
    }
}
