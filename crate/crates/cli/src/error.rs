use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed input, or invalid arguments.
    #[error("{0}")]
    Input(String),

    /// A computation failed to converge or produced inconsistent results.
    #[error("{0}")]
    Compute(String),

    /// `--verify` ran and a check did not hold.
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Compute(_) => 3,
            CliError::Verification(_) => 4,
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.code())
    }
}

impl From<sudoku_spectra::TilingError> for CliError {
    fn from(e: sudoku_spectra::TilingError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<sudoku_spectra::linalg::LinalgError> for CliError {
    fn from(e: sudoku_spectra::linalg::LinalgError) -> Self {
        CliError::Compute(e.to_string())
    }
}
