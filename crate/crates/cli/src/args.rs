use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "tridiag-spectra", version, about = "Spectra of random tridiagonal Toeplitz matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Singularity constants of the example entry laws.
    Constants(ConstantsArgs),
    /// Evaluate a limit law on a grid of arguments.
    LimitCdf(LimitCdfArgs),
    /// Simulate finite-order extremes and compare them with the limit laws.
    Simulate(SimulateArgs),
    /// Run the verification checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("assignment").required(true).args(["sym", "nonsym"])))]
pub struct DistArgs {
    /// Entry law: rademacher, gaussian, cauchy or pointmass:x,y[,z].
    #[arg(long)]
    pub dist: String,
    /// Symmetric matrix: the subdiagonal equals the superdiagonal.
    #[arg(long)]
    pub sym: bool,
    /// Independent sub- and superdiagonals.
    #[arg(long)]
    pub nonsym: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Also write the output to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct ConstantsArgs {
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    /// CDF of the limiting largest extreme.
    Vmax,
    /// CDF of the limiting smallest extreme.
    Wmin,
    /// Density of the limiting smallest extreme given that it is positive.
    WminDensity,
    /// CDF of the limiting condition number given that it is finite.
    Kappa,
}

#[derive(Debug, Clone, Args)]
pub struct LimitCdfArgs {
    #[command(flatten)]
    pub dist: DistArgs,
    #[arg(long, value_enum)]
    pub which: Which,
    /// Comma-separated, nondecreasing arguments.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
    pub grid: Vec<f64>,
    /// Absolute accuracy target of each value.
    #[arg(long)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    ClosedForm,
    Oracle,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub dist: DistArgs,
    /// Comma-separated matrix orders.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    #[arg(long, env = "TRIDIAG_SPECTRA_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Worker cap; output does not depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long, value_enum, default_value_t = BackendArg::ClosedForm)]
    pub backend: BackendArg,
    /// Accuracy target of the reference laws used for KS distances.
    #[arg(long)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Level {
    /// Every check except the large-order convergence study.
    Quick,
    /// Every check, plus formula diagnostics.
    Full,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Level::Quick)]
    pub level: Level,
    #[arg(long)]
    pub threads: Option<usize>,
}
