use std::path::PathBuf;

use regspec_core::Error as CoreError;

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitKind {
    Input = 2,
    Config = 3,
    Degenerate = 4,
    Io = 5,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Input { path: PathBuf, message: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("degenerate data: {0}")]
    Degenerate(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    pub fn input(path: impl Into<PathBuf>, message: impl Into<String>) -> Self {
        CliError::Input { path: path.into(), message: message.into() }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn kind(&self) -> ExitKind {
        match self {
            CliError::Input { .. } => ExitKind::Input,
            CliError::Config(_) => ExitKind::Config,
            CliError::Degenerate(_) => ExitKind::Degenerate,
            CliError::Io { .. } => ExitKind::Io,
            CliError::Core(e) => core_kind(e),
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.kind() as i32
    }
}

fn core_kind(e: &CoreError) -> ExitKind {
    match e {
        CoreError::DegenerateData | CoreError::SingularSystem => ExitKind::Degenerate,
        CoreError::EmptyInput
        | CoreError::NonFinite(_)
        | CoreError::LengthMismatch { .. }
        | CoreError::UnorderedFrequencies
        | CoreError::FrequencyOutOfRange(_)
        | CoreError::InvalidGrid => ExitKind::Input,
        _ => ExitKind::Config,
    }
}

pub type CliResult<T> = Result<T, CliError>;
