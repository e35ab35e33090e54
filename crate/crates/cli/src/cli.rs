use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use patchscope_core::patch::Strategy;
use patchscope_core::Scalar;

#[derive(Parser, Debug)]
#[command(
    name = "patchscope",
    version,
    about = "Exact finite-scale diagnostics for Assouad dimension and arithmetic patches"
)]
pub(crate) struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub(crate) enum Command {
    /// Generate a point set from a built-in family.
    Gen(GenArgs),
    /// Grid Assouad estimate over scale pairs.
    Dim(DimArgs),
    /// Box-counting counts and slopes.
    Box(BoxArgs),
    /// Best arithmetic-patch defect for a patch size.
    Patch(PatchArgs),
    /// Best defect for an arbitrary finite pattern.
    Steinhaus(SteinhausArgs),
    /// Zoom into the densest cell and measure its distance to the unit ball.
    Tangent(TangentArgs),
    /// Number-theoretic checks.
    Numtheory(NumtheoryArgs),
    /// Run the verification battery and write a JSON report.
    Verify(VerifyArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum GenFamily {
    #[value(name = "e_p")]
    EP,
    #[value(name = "union_patches")]
    UnionPatches,
    Squares,
    #[value(name = "prime_powers")]
    PrimePowers,
    Primes,
    Bhp,
    #[value(name = "full_grid")]
    FullGrid,
    Cantor,
}

#[derive(Args, Debug)]
pub(crate) struct GenArgs {
    pub family: GenFamily,
    #[arg(long, default_value_t = 2)]
    pub p: u32,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long, default_value_t = 2)]
    pub m: u32,
    #[arg(long, default_value_t = 4)]
    pub base: u32,
    #[arg(long, default_value_t = 8)]
    pub count: u32,
    #[arg(long, default_value_t = 8)]
    pub depth: u32,
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    /// Emit `{1/a}` instead of the integers (integer families only).
    #[arg(long)]
    pub reciprocal: bool,
    /// Output file; stdout when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub(crate) struct ScaleArgs {
    /// Exponent pairs `a:b` meaning `R = base^-a`, `r = base^-b`; derived from the set when absent.
    #[arg(long)]
    pub pairs: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub base: u32,
    /// Maximum number of levels for derived pairs.
    #[arg(long, default_value_t = 12)]
    pub levels: i32,
    /// Smallest `R/r` admitted into the estimate.
    #[arg(long = "min-ratio", default_value_t = patchscope_core::grid::DEFAULT_MIN_RATIO)]
    pub min_ratio: u64,
}

#[derive(Args, Debug)]
pub(crate) struct DimArgs {
    #[command(flatten)]
    pub scales: ScaleArgs,
    #[arg(long)]
    pub csv: bool,
    pub file: PathBuf,
}

#[derive(Args, Debug)]
pub(crate) struct BoxArgs {
    /// Comma-separated, strictly decreasing scales; derived from the set when absent.
    #[arg(long)]
    pub scales: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub base: u32,
    #[arg(long, default_value_t = 12)]
    pub levels: i32,
    #[arg(long)]
    pub csv: bool,
    pub file: PathBuf,
}

#[derive(Args, Debug)]
pub(crate) struct PatchArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = Strategy::Anchored)]
    pub strategy: Strategy,
    /// Print the full report as JSON instead of the summary line.
    #[arg(long)]
    pub json: bool,
    pub file: PathBuf,
}

#[derive(Args, Debug)]
pub(crate) struct SteinhausArgs {
    #[arg(long)]
    pub pattern: PathBuf,
    #[arg(long, default_value_t = Strategy::Anchored)]
    pub strategy: Strategy,
    #[arg(long)]
    pub json: bool,
    pub file: PathBuf,
}

#[derive(Args, Debug)]
pub(crate) struct TangentArgs {
    #[command(flatten)]
    pub scales: ScaleArgs,
    /// Ball lattice spacing; `2/resolution` must be an integer.
    #[arg(long, default_value = "1/64")]
    pub resolution: Scalar,
    pub file: PathBuf,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum NumtheoryTask {
    Primes,
    Bhp,
    No3ap,
    Blocks,
}

#[derive(Args, Debug)]
pub(crate) struct NumtheoryArgs {
    pub task: NumtheoryTask,
    #[arg(long = "N")]
    pub n: Option<u64>,
    #[arg(long = "K")]
    pub k: Option<u64>,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub kmax: Option<u32>,
}

#[derive(Args, Debug)]
pub(crate) struct VerifyArgs {
    /// `all` or a comma-separated list of family names.
    #[arg(long, default_value = "all")]
    pub families: String,
    #[arg(long)]
    pub kmax: Option<usize>,
    /// JSON configuration overriding the defaults.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}
