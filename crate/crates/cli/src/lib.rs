//! Reports, commands and the random-tiling search behind the
//! `sudoku-spectra` binary.

pub mod commands;
pub mod error;
pub mod report;
pub mod search;

pub use error::CliError;
