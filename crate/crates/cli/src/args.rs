use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

const PROPERTIES: &str = "\
Properties:
  scalar-coprime        N monic polynomials of degrees --deg are coprime
  left-coprime          two m x m Hermite forms of determinant degrees --deg are left coprime
  pairwise-coprime      N Hermite forms (--m, --deg) are pairwise left coprime
  mutual-coprime        N Hermite forms (--m, --deg) are mutually left coprime
  reachable             random (A, B) with --n states and --m inputs is reachable
  observable            random (A, C) with --n states and --p outputs is observable
  minimal               random (A, B, C, D) with --n, --m, --p is minimal
  parallel-reachable    parallel connection of nodes with state sizes --deg and --m inputs is reachable
  noncatastrophic       code of a reachable system with --s states and rate --k/--n is non-catastrophic
  right-prime-fraction  [Q; P] with deg det Q = --n, Q of size --m, P with --p rows is right prime

Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 budget exceeded, 4 runtime failure.";

#[derive(Debug, Parser)]
#[command(
    name = "polyprime",
    version,
    about = "Primeness and coprimeness probabilities of polynomial matrices over finite fields",
    after_help = PROPERTIES
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every exact counting formula against enumeration.
    Verify(VerifyArgs),
    /// Exhaustive census of a property.
    Census(CensusArgs),
    /// Monte Carlo estimate of a property.
    Mc(McArgs),
    /// Scaled-defect convergence over several field sizes.
    Fit(FitArgs),
    /// Report on a matrix, matrix list, generator or system in a JSON file.
    Analyze(AnalyzeArgs),
    /// List registered properties and formulas.
    List,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Worker threads (default: logical cores).
    #[arg(long)]
    pub workers: Option<usize>,
    /// Report file; nothing is written without it.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    /// Field as "p" or "p^e"; a bare number is always a prime.
    #[arg(long, default_value = "2")]
    pub field: String,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of matrices or nodes.
    #[arg(long = "N")]
    pub big_n: Option<usize>,
    /// Comma list of degrees or node sizes.
    #[arg(long, value_delimiter = ',')]
    pub deg: Vec<usize>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Code degree (number of states).
    #[arg(long)]
    pub s: Option<usize>,
    /// Code rate as "k/n".
    #[arg(long)]
    pub rate: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    pub property: String,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Largest number of samples to enumerate.
    #[arg(long)]
    pub budget: Option<u128>,
}

#[derive(Debug, Args)]
pub struct McArgs {
    pub property: String,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    pub property: String,
    /// Field sizes are taken from --field as a comma list, e.g. "2,3,5".
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Estimate each point by Monte Carlo with this many trials instead of
    /// an exhaustive census.
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Allowed deviation of the scaled defect at the largest field.
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long)]
    pub budget: Option<u128>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub file: PathBuf,
}
