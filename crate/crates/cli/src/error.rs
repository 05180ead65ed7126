use thiserror::Error;

/// Failure classes, each mapped to a fixed process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("validation error: {0}")]
    Validation(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("search failure: {0}")]
    Search(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Io(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Search(_) => 4,
        }
    }
}

impl From<ab_kuramoto::Error> for CliError {
    fn from(e: ab_kuramoto::Error) -> Self {
        use ab_kuramoto::Error as E;
        match e {
            E::Domain(_) | E::Contract(_) | E::Singularity(_) => CliError::Validation(e.to_string()),
            E::Numerical { .. } => CliError::Numerical(e.to_string()),
            E::Search(_) => CliError::Search(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
