use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rds_solver::{ForgetRule, JoinMode, ValidityRule};

/// Fixed seed used when `--seed` is absent.
pub const DEFAULT_SEED: u64 = 20_170_601;

#[derive(Parser, Debug, Clone)]
#[command(name = "rdom", version, about = "Distance-r domination over tree decompositions")]
pub struct Cli {
    /// Worker threads for the parallel parts. Results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Minimum r-dominating set with a witness.
    SolveRds(SolveRdsArgs),
    /// Randomized connected r-domination: decision with --k, else minimum size.
    SolveRcds(SolveRcdsArgs),
    /// Brute-force ground truth for small graphs.
    Oracle(OracleArgs),
    /// Builds a hard instance from a CNF formula.
    Gen(GenArgs),
    /// Validates a decomposition, or reports the heuristic one.
    CheckTd(CheckTdArgs),
    /// Per-node-type timings and table sizes as TSV.
    Bench(BenchArgs),
    /// Differential checks against the brute-force oracle at small sizes.
    SelfTest(SelfTestArgs),
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// Graph in PACE .gr format.
    #[arg(long)]
    pub graph: PathBuf,
    /// Decomposition in PACE .td format; min-fill is used when absent.
    #[arg(long)]
    pub td: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum JoinArg {
    Dense,
    #[default]
    Sparse,
}

impl From<JoinArg> for JoinMode {
    fn from(j: JoinArg) -> Self {
        match j {
            JoinArg::Dense => JoinMode::Dense,
            JoinArg::Sparse => JoinMode::Sparse,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ValidityArg {
    #[default]
    Magnitude,
    Signed,
}

impl From<ValidityArg> for ValidityRule {
    fn from(v: ValidityArg) -> Self {
        match v {
            ValidityArg::Magnitude => ValidityRule::Magnitude,
            ValidityArg::Signed => ValidityRule::Signed,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ForgetArg {
    #[default]
    Magnitude,
    Literal,
}

impl From<ForgetArg> for ForgetRule {
    fn from(f: ForgetArg) -> Self {
        match f {
            ForgetArg::Magnitude => ForgetRule::Magnitude,
            ForgetArg::Literal => ForgetRule::Literal,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Problem {
    #[default]
    Rds,
    Rcds,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Tsv,
    Human,
}

fn radius() -> clap::builder::RangedI64ValueParser<u32> {
    clap::value_parser!(u32).range(1..)
}

#[derive(Args, Debug, Clone)]
pub struct SolveRdsArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_parser = radius())]
    pub r: u32,
    #[arg(long, value_enum, default_value_t)]
    pub join: JoinArg,
    #[arg(long, value_enum, default_value_t)]
    pub validity: ValidityArg,
    #[arg(long, value_enum, default_value_t)]
    pub forget: ForgetArg,
    /// Check the ordering property of every table.
    #[arg(long)]
    pub self_check: bool,
}

#[derive(Args, Debug, Clone)]
pub struct SolveRcdsArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_parser = radius())]
    pub r: u32,
    /// Decide size k; without it the smallest accepted size is searched.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    pub reps: u64,
    /// Only runs rooted at this vertex (1-based).
    #[arg(long, conflicts_with = "all_roots")]
    pub root: Option<usize>,
    /// Runs rooted at every vertex (the default).
    #[arg(long)]
    pub all_roots: bool,
    /// Exit with 1 on NO.
    #[arg(long)]
    pub expect_yes: bool,
    /// Print the parity of every run.
    #[arg(long)]
    pub verbose: bool,
}

#[derive(Args, Debug, Clone)]
pub struct OracleArgs {
    #[arg(value_enum)]
    pub problem: Problem,
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_parser = radius())]
    pub r: u32,
    /// Largest vertex count the enumeration accepts.
    #[arg(long, default_value_t = oracle::DEFAULT_CAP)]
    pub cap: usize,
}

#[derive(Args, Debug, Clone)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: Problem,
    #[arg(long, value_parser = radius())]
    pub r: u32,
    #[arg(long, default_value_t = 1)]
    pub p: usize,
    /// Formula in DIMACS CNF format.
    #[arg(long)]
    pub cnf: PathBuf,
    /// Where to write the graph (.gr).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Where to write the key=value sidecar.
    #[arg(long)]
    pub meta: Option<PathBuf>,
    /// Connected instances: build the layout without the two repairs.
    #[arg(long)]
    pub literal: bool,
    /// Refuse instances with more vertices than this.
    #[arg(long, default_value_t = reduction_gen::DEFAULT_VERTEX_CAP)]
    pub cap: usize,
    /// Build and check the witness of every satisfying assignment.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Args, Debug, Clone)]
pub struct CheckTdArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Write the decomposition that was checked or computed.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct BenchArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_parser = radius())]
    pub r: u32,
    #[arg(long, value_enum, default_value_t)]
    pub problem: Problem,
    /// Solution size tracked by the connected tables (required for rcds).
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t)]
    pub join: JoinArg,
    /// One row per decomposition node instead of per node type.
    #[arg(long)]
    pub per_node: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct SelfTestArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Random graphs per check.
    #[arg(long, default_value_t = 40)]
    pub graphs: usize,
}
