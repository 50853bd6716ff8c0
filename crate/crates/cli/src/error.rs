use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Numerics(#[from] normplane::Error),
}

impl CliError {
    /// 1 for configuration and validation errors, 2 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io { .. } => 1,
            CliError::Numerics(e) if e.is_validation() => 1,
            CliError::Numerics(_) => 2,
        }
    }
}
