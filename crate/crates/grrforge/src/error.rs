use std::fmt;
use std::io;

/// Errors surfaced by the command line.
#[derive(Debug)]
pub enum CliError {
    Core(grrforge_core::Error),
    Io(io::Error),
    Usage(String),
}

impl CliError {
    /// 2 for budget exhaustion and cap refusals, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(grrforge_core::Error::BudgetExceeded(_))
            | CliError::Core(grrforge_core::Error::CapExceeded { .. }) => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
            CliError::Usage(s) => write!(f, "{s}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<grrforge_core::Error> for CliError {
    fn from(e: grrforge_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;
