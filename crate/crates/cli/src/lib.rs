//! The `appell-carlitz` command-line tool.
//!
//! Exit codes: 0 success, 1 cross-check mismatch, 2 usage error,
//! 3 computation error.

pub mod args;
pub mod commands;
pub mod family_file;
pub mod lemmas;
pub mod output;

use std::fmt::Display;
use std::io::Write;

use clap::Parser;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_COMPUTE: i32 = 3;

/// A one-line diagnostic and the exit code that goes with it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    pub fn usage_from(err: impl Display) -> Self {
        Failure::usage(err.to_string())
    }

    pub fn compute(err: impl Display) -> Self {
        Failure { code: EXIT_COMPUTE, message: err.to_string() }
    }

    pub fn mismatch(message: impl Into<String>) -> Self {
        Failure { code: EXIT_MISMATCH, message: message.into() }
    }
}

/// Runs the tool on `argv` (program name first), writing to `out` and
/// `err`, and returns the exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match commands::dispatch(&cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
