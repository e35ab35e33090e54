//! Command-line front end for `patchscope-core` and the `verify` battery.
//!
//! [`run`] parses arguments, dispatches to a subcommand and maps the outcome
//! to a process exit code: 0 on success, 1 on bad input or a domain error,
//! 2 when an asserted battery flag fails.

pub mod battery;
mod cli;
mod commands;

use std::ffi::OsString;
use std::io::Write;

pub use battery::{run_battery, BatteryConfig, BatteryReport, FamilyRow, Flag};

/// Environment variable capping the rayon worker count.
pub const THREADS_ENV: &str = "PATCHSCOPE_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] patchscope_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0} asserted flag(s) failed")]
    Assertion(usize),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Assertion(_) => 2,
            _ => 1,
        }
    }
}

/// Runs one invocation, writing results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let parsed = match <cli::Cli as clap::Parser>::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // help and version are successful requests
            return if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                1
            } else {
                let _ = write!(out, "{}", e.render());
                0
            };
        }
    };
    match commands::dispatch(parsed.command, out, err) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {f}");
            f.exit_code()
        }
    }
}

/// Builds the global thread pool from [`THREADS_ENV`] if it is set.
pub fn init_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Usage(e.to_string()))
}
