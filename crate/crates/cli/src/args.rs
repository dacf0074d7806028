//! Command-line surface.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "l1caputo", version, about = "L1 scheme for the Caputo derivative: convergence experiments")]
pub struct Cli {
    /// Flat `key = value` file supplying defaults for the subcommand's flags.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reproduce one of the four convergence-order tables.
    Table(TableArgs),
    /// Estimate the convergence order for one profile.
    Order(OrderArgs),
    /// Measure truncation errors against exact Caputo derivatives.
    Truncation(TruncationArgs),
    /// Solve D^a y + lambda y = f for a manufactured solution.
    SolveFode(FodeArgs),
    /// Estimate the A_p characteristic of a weight.
    ApChar(ApArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProfileKind {
    Power,
    Jacobi,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WeightKind {
    One,
    Power,
    Jacobi,
    Loginv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LogTauArg {
    Coarsest,
    Middle,
}

#[derive(Debug, clap::Args)]
pub struct TableArgs {
    /// Table number, 1 to 4.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub id: u8,
    /// Coarsest grid size (power of two, at least 8). Defaults to 1024 for table 1, 2048 otherwise.
    #[arg(long)]
    pub base_n: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Step size used in the logarithmic correction of table 4.
    #[arg(long, value_enum, default_value_t = LogTauArg::Coarsest)]
    pub log_tau: LogTauArg,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
}

/// Profile and weight parameters shared by `order` and `truncation`.
#[derive(Debug, clap::Args)]
pub struct ProfileArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, value_enum)]
    pub profile: ProfileKind,
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 0.0)]
    pub mu: f64,
    #[arg(long, default_value_t = 0.0)]
    pub gamma: f64,
    /// Final time.
    #[arg(long = "T", default_value_t = 1.0)]
    pub horizon: f64,
    /// Shift added to the profile exponents (subtracted for the log exponent).
    #[arg(long, default_value_t = 0.001, allow_hyphen_values = true)]
    pub offset: f64,
}

#[derive(Debug, clap::Args)]
pub struct OrderArgs {
    #[command(flatten)]
    pub profile: ProfileArgs,
    #[arg(long, default_value_t = 1024)]
    pub base_n: usize,
    /// Also report the order with the logarithmic prefactor removed.
    #[arg(long)]
    pub log_adjusted: bool,
    #[arg(long, value_enum, default_value_t = LogTauArg::Coarsest)]
    pub log_tau: LogTauArg,
}

#[derive(Debug, clap::Args)]
pub struct TruncationArgs {
    #[command(flatten)]
    pub profile: ProfileArgs,
    #[arg(long, value_enum)]
    pub weight: WeightKind,
    /// Comma-separated grid sizes.
    #[arg(long, value_delimiter = ',', default_value = "64,128,256,512")]
    pub grids: Vec<usize>,
}

#[derive(Debug, clap::Args)]
pub struct FodeArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0)]
    pub lambda: f64,
    /// Initial value; the exact solution is y0 plus the manufactured profile.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub y0: f64,
    /// `power:K` for t^K, or `quadratic` for t^2.
    #[arg(long)]
    pub manufactured: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long = "T", default_value_t = 1.0)]
    pub horizon: f64,
    /// Print t, Y_n and y(t_n) for every node.
    #[arg(long)]
    pub print_solution: bool,
}

#[derive(Debug, clap::Args)]
pub struct ApArgs {
    #[arg(long, value_enum)]
    pub weight: WeightKind,
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 0.0)]
    pub mu: f64,
    #[arg(long, default_value_t = 0.0)]
    pub gamma: f64,
    #[arg(long = "T", default_value_t = 1.0)]
    pub horizon: f64,
    #[arg(long, default_value_t = 8)]
    pub depth: u32,
}
