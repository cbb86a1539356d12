//! Command-line front end for `harnack-core`.
//!
//! Every command writes a self-describing report: CSV with a `#` header that
//! echoes the configuration, or JSON. Verification commands end with a
//! `checked=N passed=M max_violation=V` summary and map their outcome to
//! the process exit status.

mod commands;
pub mod report;

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use report::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] harnack_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// Process exit code for this error: 2 for configuration problems.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

/// Result of a successful run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Passed,
    Failed,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Passed => 0,
            Outcome::Failed => 1,
        }
    }

    fn from_pass(all: bool) -> Self {
        if all {
            Outcome::Passed
        } else {
            Outcome::Failed
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl std::fmt::Display for Format {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// Parsed command line.
#[derive(Debug, Clone, Parser)]
#[command(name = "harnack", version, about = "Harnack inequalities, hyperbolic-type metrics and harmonic Schwarz lemmas")]
pub struct RunConfig {
    /// Base seed of every random stream.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of samples (command-specific default).
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Absolute slack of inequality checks (command-specific default).
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub output: Format,
    /// Grid resolution of the quasihyperbolic solver.
    #[arg(long, global = true, default_value_t = 128)]
    pub resolution: usize,
    /// Dimension constant c_n of the quasiregular Harnack constant.
    #[arg(long = "cn", global = true, default_value_t = 1.0)]
    pub c_n: f64,
    /// Constant b of the quasiconformal metric bound.
    #[arg(long = "b", global = true, default_value_t = 1.0)]
    pub b: f64,
    /// Uniformity constant A.
    #[arg(long = "A", global = true, default_value_t = 1.0)]
    pub a: f64,
    /// Inner dilatation K_I.
    #[arg(long = "KI", global = true, default_value_t = 1.0)]
    pub k_i: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Evaluate a metric between two points.
    Metric(MetricArgs),
    /// Approximate a quasihyperbolic geodesic.
    Geodesic(GeodesicArgs),
    /// Evaluate a special function.
    Specfun(SpecfunArgs),
    /// Sweep the Harnack inequalities on the unit ball or half-space.
    HarnackVerify(HarnackArgs),
    /// Sweep the harmonic Schwarz lemma on a disk.
    SchwarzVerify(SchwarzArgs),
    /// Sweep the gradient estimates on the unit disk.
    GradientVerify(GradientArgs),
    /// Tabulate the isolated-boundary-point counterexample.
    Counterexample(CounterexampleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricKind {
    Rho,
    J,
    K,
    KLowerLogratio,
    KLowerLog1p,
    Harnack,
    /// Closed-form comparison quantities at once.
    Bounds,
}

#[derive(Debug, Clone, Args)]
pub struct MetricArgs {
    #[arg(long, value_enum)]
    pub kind: MetricKind,
    /// Domain literal such as `ball:n=2` or `slit-plane`.
    #[arg(long)]
    pub domain: String,
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, allow_hyphen_values = true)]
    pub y: String,
}

#[derive(Debug, Clone, Args)]
pub struct GeodesicArgs {
    #[arg(long)]
    pub domain: String,
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, allow_hyphen_values = true)]
    pub y: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpecialFunction {
    EllipticK,
    Mu,
    MuInverse,
    Phi,
    C,
    Omega,
}

#[derive(Debug, Clone, Args)]
pub struct SpecfunArgs {
    #[arg(long = "function", value_enum)]
    pub function: SpecialFunction,
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long)]
    pub y: Option<f64>,
    #[arg(long = "K")]
    pub k: Option<f64>,
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct HarnackArgs {
    /// `ball:n=..` or `halfspace:n=..`, optionally with a sampling box.
    #[arg(long, default_value = "ball:n=2")]
    pub domain: String,
    #[arg(long, default_value_t = 0.5)]
    pub s: f64,
    /// Number of random positive harmonic functions.
    #[arg(long, default_value_t = 20)]
    pub functions: usize,
    /// Poisson kernels per random function.
    #[arg(long, default_value_t = 3)]
    pub terms: usize,
    /// Ball centers per empirical Harnack constant.
    #[arg(long, default_value_t = 20)]
    pub centers: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchwarzFunction {
    U0,
    Random,
    Constant,
}

#[derive(Debug, Clone, Args)]
pub struct SchwarzArgs {
    #[arg(long = "function", value_enum, default_value_t = SchwarzFunction::Random)]
    pub function: SchwarzFunction,
    /// Number of functions for `random`; each is swept at every sample.
    #[arg(long, default_value_t = 1)]
    pub functions: usize,
    #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
    pub center: String,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    #[arg(long = "M", default_value_t = 1.0)]
    pub m: f64,
    /// Degree of random trigonometric boundary data.
    #[arg(long, default_value_t = 8)]
    pub degree: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GradientFunction {
    U0,
    Ell,
    Random,
}

#[derive(Debug, Clone, Args)]
pub struct GradientArgs {
    #[arg(long = "function", value_enum, default_value_t = GradientFunction::Random)]
    pub function: GradientFunction,
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub beta: f64,
    #[arg(long, default_value_t = 8)]
    pub degree: usize,
}

#[derive(Debug, Clone, Args)]
pub struct CounterexampleArgs {
    #[arg(long, default_value_t = 6)]
    pub pmax: usize,
    #[arg(long, default_value_t = 0.5)]
    pub s: f64,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
}

/// Executes `config`, writing the report to `out`.
pub fn run(config: &RunConfig, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let (report, outcome) = commands::execute(config)?;
    report.write(config.output, out)?;
    Ok(outcome)
}

/// Parses `args` and runs, returning the process exit code. Reports go to
/// `out`, diagnostics to `err`.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match run(&config, out) {
        Ok(outcome) => outcome.exit_code(),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
