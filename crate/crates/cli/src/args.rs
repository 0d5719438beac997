use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

#[derive(Debug, Parser)]
#[command(
    name = "scarf",
    version,
    about = "Exact spectrum and eigenfunctions of the periodic Scarf potential"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Clone, Default, Args)]
pub struct GlobalArgs {
    /// Coupling s (> 0).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub s: Option<f64>,
    /// Lattice period a [default: 1].
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// Mass m [default: 1].
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub m: Option<f64>,
    /// Output format [default: json].
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// JSON file with defaults for any flag.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form levels for n = 0..=n_max.
    Spectrum(SpectrumArgs),
    /// Band edges, widths and gaps (band regime only).
    Bands(SpectrumArgs),
    /// Sample one normalized eigenfunction over a period.
    Wavefunction(WavefunctionArgs),
    /// Cross-check closed forms against the numerical oracles.
    Verify(VerifyArgs),
    /// Enumerate the residue combinations for one lambda.
    Table1(Table1Args),
}

#[derive(Debug, Clone, Default, Args)]
pub struct SpectrumArgs {
    /// Highest level index [default: 3].
    #[arg(long)]
    pub n_max: Option<usize>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct WavefunctionArgs {
    /// Level index [default: 0].
    #[arg(long)]
    pub n: Option<usize>,
    /// Band edge (band regime only).
    #[arg(long, value_enum)]
    pub edge: Option<EdgeArg>,
    /// Number of samples [default: 256].
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct VerifyArgs {
    /// Highest level index [default: 3].
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Oracle to compare against [default: both].
    #[arg(long, value_enum)]
    pub oracle: Option<OracleKind>,
    /// Relative tolerance of the shooting comparison [default: 1e-8].
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Table1Args {
    /// Dimensionless energy lambda.
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    /// Level index, used with --edge when --lambda is absent.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum)]
    pub edge: Option<EdgeArg>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeArg {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleKind {
    Shooting,
    Fd,
    Both,
}
