use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Io(String),
    #[error("no crossing: {0}")]
    NoCrossing(String),
    #[error("validation failed: {0}")]
    Validation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 2,
            CliError::Io(_) => 3,
            CliError::NoCrossing(_) => 4,
            CliError::Validation(_) => 5,
        }
    }
}

impl From<ethsm_core::ModelError> for CliError {
    fn from(e: ethsm_core::ModelError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<ethsm_sim::SimError> for CliError {
    fn from(e: ethsm_sim::SimError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
