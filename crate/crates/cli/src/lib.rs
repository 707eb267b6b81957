//! The `asmkit` command line. [`run_args`] is the whole program minus the
//! process exit, so tests drive it in-process.

mod args;
mod cache;
mod commands;
mod output;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;
use thiserror::Error;

pub use args::{Cli, Command, Format};
pub use cache::{Cache, CacheKey};

/// Version tag carried by every JSON document and cache entry.
pub const SCHEMA: &str = "asmkit/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid arguments: {0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] asmkit::Error),

    #[error("cache: {0}")]
    Cache(String),

    #[error("output: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(asmkit::Error::CapExceeded { .. }) => EXIT_CAP,
            _ => EXIT_INVALID,
        }
    }
}

/// Exit code plus everything the process would print.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: EXIT_INVALID,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    run(&cli)
}

/// Run a parsed command line on its own thread pool.
pub fn run(cli: &Cli) -> Outcome {
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(p) => p,
        Err(e) => return failure(&CliError::Usage(format!("thread pool: {e}"))),
    };
    match pool.install(|| commands::dispatch(cli)) {
        Ok(out) => Outcome {
            code: if out.ok { EXIT_OK } else { EXIT_FAILED },
            stdout: out.render(cli.format),
            stderr: String::new(),
        },
        Err(e) => failure(&e),
    }
}

fn failure(e: &CliError) -> Outcome {
    Outcome {
        code: e.exit_code(),
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    }
}
