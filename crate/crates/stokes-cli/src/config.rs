use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Basis,
    Supnorms,
    Integrals,
    Sums,
    Gamma,
}

impl Suite {
    /// Every suite, in report order.
    pub const ALL: [Suite; 5] = [
        Suite::Basis,
        Suite::Supnorms,
        Suite::Integrals,
        Suite::Sums,
        Suite::Gamma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Basis => "basis",
            Suite::Supnorms => "supnorms",
            Suite::Integrals => "integrals",
            Suite::Sums => "sums",
            Suite::Gamma => "gamma",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

/// A fully resolved run configuration. Output destination and timing
/// collection do not change any computed value, so they are left out of
/// the serialized config embedded in reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteConfig {
    /// Sorted and deduplicated.
    pub suites: Vec<Suite>,
    pub max_index: u32,
    pub grid_2d: usize,
    pub grid_3d: usize,
    pub quad_tol: f64,
    pub seed: u64,
    pub output_format: OutputFormat,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    pub timings: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            suites: Suite::ALL.to_vec(),
            max_index: 4,
            grid_2d: 400,
            grid_3d: 120,
            quad_tol: 1e-8,
            seed: 0,
            output_format: OutputFormat::Json,
            out: None,
            timings: false,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "stokes-verify",
    version,
    about = "Verify the closed-form bounds for the Stokes eigenfunctions on the cube against independent numerical oracles"
)]
struct Args {
    /// Suite to run; repeat for several. Runs all suites when omitted.
    #[arg(long = "suite", value_enum)]
    suites: Vec<Suite>,

    /// Largest mode index used by the basis and sup-norm suites.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..=16))]
    max_index: u32,

    /// Points per axis of the 2D oracle grids.
    #[arg(long = "grid2d", default_value_t = 400, value_parser = grid_points)]
    grid_2d: usize,

    /// Points per axis of the 3D oracle grids.
    #[arg(long = "grid3d", default_value_t = 120, value_parser = grid_points)]
    grid_3d: usize,

    /// Absolute tolerance handed to the adaptive quadrature.
    #[arg(long, default_value_t = 1e-8, value_parser = positive_real)]
    quad_tol: f64,

    /// Seed of every sampled point and direction.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    #[arg(long = "format", value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,

    /// Write the report here instead of standard output.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Record wall-clock milliseconds per check. Off by default so that
    /// reports for the same configuration are byte-identical.
    #[arg(long)]
    timings: bool,
}

fn grid_points(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n < 8 {
        return Err(format!("needs at least 8 points per axis, got {n}"));
    }
    Ok(n)
}

fn positive_real(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if !(v.is_finite() && v > 0.0) {
        return Err(format!("must be a positive finite number, got {s}"));
    }
    Ok(v)
}

/// Parses command-line arguments (without the program name).
pub fn parse_config<I, S>(argv: I) -> Result<SuiteConfig, CliError>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args = Args::try_parse_from(
        std::iter::once(std::ffi::OsString::from("stokes-verify"))
            .chain(argv.into_iter().map(Into::into)),
    )
    .map_err(CliError::Usage)?;
    let mut suites = if args.suites.is_empty() {
        Suite::ALL.to_vec()
    } else {
        args.suites
    };
    suites.sort();
    suites.dedup();
    Ok(SuiteConfig {
        suites,
        max_index: args.max_index,
        grid_2d: args.grid_2d,
        grid_3d: args.grid_3d,
        quad_tol: args.quad_tol,
        seed: args.seed,
        output_format: args.format,
        out: args.out,
        timings: args.timings,
    })
}
