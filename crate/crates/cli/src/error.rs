use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Core(cloakwave::Error),

    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    /// 2 for bad input, 3 for numeric failures, 1 for I/O trouble while
    /// writing results.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Core(e) if e.is_validation() => 2,
            CliError::Core(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<cloakwave::Error> for CliError {
    fn from(e: cloakwave::Error) -> Self {
        CliError::Core(e)
    }
}
