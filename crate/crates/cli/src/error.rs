use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed algebra file: {0}")]
    Parse(String),
    /// A mathematical failure that stops the command (invalid algebra or
    /// pair, no mixed structure).
    #[error("{0}")]
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Math(_) => 1,
            CliError::Usage(_) | CliError::Io { .. } | CliError::Parse(_) => 2,
        }
    }
}
