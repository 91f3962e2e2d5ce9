use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use unisets::{Exec, GroupSpec, Strategy, VerifyOptions};

#[derive(Parser, Debug, Clone)]
#[command(name = "unisets", version, about = "Universal sets, small bases and power-basis graphs")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Execution policy for the verification sweeps.
    #[arg(long, value_enum, default_value_t = ExecArg::Parallel, global = true)]
    pub exec: ExecArg,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Build and verify a k-universal set.
    Universal(UniversalArgs),
    /// Build a basis B with A ⊆ BB.
    Basis(BasisArgs),
    /// Basis graph, min-degree core and walk counts for d-th powers.
    Powers(PowersArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExecArg {
    Sequential,
    Parallel,
}

impl From<ExecArg> for Exec {
    fn from(e: ExecArg) -> Exec {
        match e {
            ExecArg::Sequential => Exec::Sequential,
            ExecArg::Parallel => Exec::Parallel,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Auto,
    Random,
    Singer,
    Tuple,
    Abelian,
    Symmetric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Auto,
    Exact,
    Sampled,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Auto => Strategy::Auto,
            StrategyArg::Exact => Strategy::Exact,
            StrategyArg::Sampled => Strategy::Sampled,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    /// Verification mode for the final check.
    #[arg(long = "verify", value_enum, default_value_t = StrategyArg::Auto)]
    pub strategy: StrategyArg,
    /// Largest exact-verification cost accepted.
    #[arg(long, default_value_t = 100_000_000)]
    pub verify_budget: u64,
    /// Trials for sampled verification.
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
}

impl VerifyArgs {
    pub fn options(&self, exec: ExecArg) -> VerifyOptions {
        VerifyOptions {
            budget: self.verify_budget,
            trials: self.trials,
            exec: exec.into(),
            ..VerifyOptions::default()
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct UniversalArgs {
    /// Group, e.g. cyclic:100, sym:4, product:4,4.
    #[arg(long)]
    pub group: GroupSpec,
    /// Size of the subsets that must have a translate inside the set.
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub verify: VerifyArgs,
}

#[derive(Args, Debug, Clone)]
pub struct BasisArgs {
    /// Group, e.g. cyclic:10000.
    #[arg(long)]
    pub group: GroupSpec,
    /// Comma-separated element indices of A.
    #[arg(long, conflicts_with = "a_file", allow_hyphen_values = false)]
    pub a: Option<String>,
    /// File of newline-separated element indices of A.
    #[arg(long)]
    pub a_file: Option<PathBuf>,
    /// Block size override.
    #[arg(long)]
    pub k: Option<usize>,
    /// Comma-separated non-doubling set X to use instead of a normal series.
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub verify: VerifyArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisChoice {
    /// `{0} ∪ P_d(n)`.
    Trivial,
}

#[derive(Args, Debug, Clone)]
pub struct PowersArgs {
    /// Exponent, at least 2.
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    pub d: u32,
    /// Largest base: the powers are 1^d..n^d.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, value_enum, conflicts_with = "basis_file")]
    pub basis: Option<BasisChoice>,
    /// File of newline-separated nonnegative integers.
    #[arg(long)]
    pub basis_file: Option<PathBuf>,
    /// Walk length.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    /// Number of core vertices whose walks are counted.
    #[arg(long, default_value_t = 5)]
    pub samples: usize,
    /// Search nodes per first edge when counting walks.
    #[arg(long, default_value_t = 100_000)]
    pub budget: u64,
    /// Seed of the randomized peeling order.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
