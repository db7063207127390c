use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "codesparse",
    version,
    about = "Sparsifiers of binary linear codes and thin subgraphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Check that --set is an alpha-sparsifier of --code
    Verify,
    /// Flip --set by codewords until no flip enlarges it
    Maximize,
    /// Count all alpha-sparsifiers exhaustively
    Census,
    /// Smallest alpha-sparsifier (size, then lexicographic)
    MinSize,
    /// A 1/2-sparsifier within the closed-form size budget
    Small,
    /// Iterated halving to a (1 - 2^-ell)-sparsifier
    Iterate,
    /// Sampled density of alpha-sparsifiers
    Montecarlo,
    /// Closed-form budgets for --n/--k or for --code
    Bounds,
    /// Cut space of --graph
    CutSpace,
    /// Check that --set (edge indices) is alpha-thin in --graph
    Thin,
    /// Count alpha-thin edge sets of --graph
    CountThin,
    /// A 2^-ell-thin edge set of --graph
    FindThin,
    /// Hitting-set check with --set, otherwise greedy disjoint hitting sets
    Hitting,
    /// Search for S with alpha*wt(c) <= wt(c_S) < wt(c) for all nonzero c
    Conjecture,
    /// Edge connectivity of --graph
    Connectivity,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Maximize => "maximize",
            Command::Census => "census",
            Command::MinSize => "min-size",
            Command::Small => "small",
            Command::Iterate => "iterate",
            Command::Montecarlo => "montecarlo",
            Command::Bounds => "bounds",
            Command::CutSpace => "cut-space",
            Command::Thin => "thin",
            Command::CountThin => "count-thin",
            Command::FindThin => "find-thin",
            Command::Hitting => "hitting",
            Command::Conjecture => "conjecture",
            Command::Connectivity => "connectivity",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Heuristic,
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// Code file ("n k" header, then k rows of 0/1)
    #[arg(long, global = true, value_name = "PATH", conflicts_with = "graph")]
    pub code: Option<PathBuf>,

    /// Graph file ("V E" header, then E lines "u v")
    #[arg(long, global = true, value_name = "PATH")]
    pub graph: Option<PathBuf>,

    /// 1-indexed coordinates, "2,3", or "@file" with one index per line
    #[arg(long, global = true, value_name = "SET")]
    pub set: Option<String>,

    /// Threshold as p/q
    #[arg(long, global = true, default_value = "1/2")]
    pub alpha: String,

    #[arg(long, global = true, default_value_t = 1)]
    pub ell: u32,

    #[arg(long, global = true, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,

    #[arg(long, global = true, default_value_t = 256)]
    pub restarts: usize,

    #[arg(long, global = true, default_value_t = 100_000)]
    pub trials: u64,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads for exhaustive and sampled enumeration
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Cap on n for walks over all 2^n subsets
    #[arg(long = "max-n", global = true, default_value_t = 28)]
    pub max_n: usize,

    /// Cap on k for walks over all 2^k codewords
    #[arg(long = "max-k", global = true, default_value_t = 28)]
    pub max_k: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Also write the report to this file
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Code length for `bounds` without --code
    #[arg(long, global = true)]
    pub n: Option<usize>,

    /// Code dimension for `bounds` without --code
    #[arg(long, global = true)]
    pub k: Option<usize>,
}
