//! Front end for `annulus-core`: argument parsing, JSON ingestion and run
//! reports. The `annulus` binary is a thin wrapper over [`execute`].

pub mod args;
pub mod commands;
pub mod error;
pub mod report;

use std::io::Write;

use clap::Parser;

pub use args::{Cli, Command};
pub use commands::{render, run, Outcome};
pub use error::{CliError, CliResult, ErrorDocument};
pub use report::{RunReport, Timings};

/// Parses `argv`, runs the command and writes its report. Help and version
/// requests print to stdout and succeed.
pub fn execute<I, T>(argv: I) -> CliResult<()>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return Ok(());
        }
        Err(e) => return Err(CliError::Usage(e.render().to_string().trim_end().to_string())),
    };
    if let Some(n) = args::thread_count()? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot configure thread pool: {e}")))?;
    }
    let outcome = run(&cli.command)?;
    let text = render(&outcome.report);
    match &outcome.destination {
        Some(path) => commands::write_file(path, text.as_bytes()),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}
