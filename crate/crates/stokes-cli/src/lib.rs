//! Verification front end for `stokes-core`: parses a run configuration,
//! executes the selected suites and renders a deterministic report.
//!
//! Exit codes: 0 when every check passed or was adjudicated, 1 when any
//! check failed or the report could not be written, 2 on a usage error.

pub mod config;
pub mod report;
pub mod suites;

use std::path::PathBuf;

pub use config::{parse_config, OutputFormat, Suite, SuiteConfig};
pub use report::{emit_report, CheckResult, Report, Status};
pub use suites::run_suite;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(clap::Error),
    #[error("cannot write report to {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// `--help` and `--version` surface as clap errors with exit code 0.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(e) => e.exit_code(),
            CliError::Io { .. } => 1,
        }
    }
}

/// Runs the whole command for `argv` (without the program name) and
/// returns the process exit code. Reports go to `--out` or `stdout`.
pub fn run<I, S>(argv: I, stdout: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let config = match parse_config(argv) {
        Ok(c) => c,
        Err(CliError::Usage(e)) => {
            let _ = e.print();
            return e.exit_code();
        }
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let report = run_suite(&config);
    let text = emit_report(&report, config.output_format, &config);
    let written = match &config.out {
        Some(path) => std::fs::write(path, &text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return e.exit_code();
    }
    report.exit_code()
}
