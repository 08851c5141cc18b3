//! `gfwigner` command line. Exit codes: 0 success, 2 invalid input,
//! 1 internal failure (including a failed `verify`).

use std::ffi::OsString;
use std::fmt;

use clap::Parser;

pub mod args;
pub mod commands;
pub mod config;
pub mod states;

pub use args::Cli;

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments, files or parameters; exit code 2.
    Validation(String),
    /// Anything else; exit code 1.
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Internal(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "invalid input: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<gfwigner::Error> for CliError {
    fn from(e: gfwigner::Error) -> Self {
        use gfwigner::Error as E;
        match e {
            E::NonCommutingGenerators
            | E::DegenerateConstraints
            | E::AmbiguousInference { .. }
            | E::PatternMismatch(_) => CliError::Internal(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Parse and run; errors go to stderr and become the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match commands::dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("gfwigner: {e}");
            e.exit_code()
        }
    }
}
