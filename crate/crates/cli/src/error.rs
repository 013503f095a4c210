use thiserror::Error;

/// Process exit statuses.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const VIOLATION: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const IO: i32 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] eur_core::Error),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl CliError {
    /// I/O failures map to 3, everything else is bad input and maps to 2.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Io(_) => exit::IO,
            Self::Csv(e) if e.is_io_error() => exit::IO,
            Self::Core(eur_core::Error::Io(_)) => exit::IO,
            _ => exit::INPUT,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
