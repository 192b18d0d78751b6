use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "segre-betti", version, about = "Betti numbers and bidegree tables of Segre embeddings of P1 x P1")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Coefficient field: an odd prime (e.g. 32003 or gf32003) or `rational`.
    #[arg(long, global = true, default_value = "32003")]
    pub field: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Ascii)]
    pub format: Format,
    /// Worker threads for block computations; defaults to the number of CPUs.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Strand cache directory; BETTI_CACHE_DIR takes precedence.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Ascii,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Graded Betti numbers: one entry with --p/--q or a table with --max-p.
    Betti(BettiArgs),
    /// Bidegree table of one Betti number.
    Bidegree(BidegreeArgs),
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        args: VerifyArgs,
    },
    /// Manage the strand cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Debug, Clone, Args)]
pub struct AlgebraArgs {
    #[arg(long, conflicts_with = "e")]
    pub a: Option<u32>,
    #[arg(long, conflicts_with = "e")]
    pub b: Option<u32>,
    /// Scroll invariants instead of a Segre embedding, e.g. `1,2`.
    #[arg(long, value_delimiter = ',')]
    pub e: Option<Vec<u32>>,
    /// Use the unreduced Koszul complex instead of the corner quotient.
    #[arg(long)]
    pub full: bool,
}

#[derive(Debug, Clone, Args)]
pub struct BettiArgs {
    #[command(flatten)]
    pub alg: AlgebraArgs,
    #[arg(long, requires = "q", conflicts_with = "max_p")]
    pub p: Option<u32>,
    #[arg(long, requires = "p")]
    pub q: Option<u32>,
    /// Print rows q = 0..3 for p = 0..MAX_P.
    #[arg(long)]
    pub max_p: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct BidegreeArgs {
    #[command(flatten)]
    pub alg: AlgebraArgs,
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub q: u32,
    /// Rows are u1 ascending and columns u2 ascending (the grid turned a quarter clockwise).
    #[arg(long)]
    pub rotate: bool,
    /// Zero border added around the support.
    #[arg(long, default_value_t = 0)]
    pub pad: u32,
    /// Explicit range `U1MIN:U1MAX,U2MIN:U2MAX` instead of the support.
    #[arg(long)]
    pub window: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    En,
    Relres,
    Chainmap,
    Kernel,
    Cocycles,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub a: Option<u32>,
    #[arg(long)]
    pub b: Option<u32>,
    #[arg(long, value_delimiter = ',')]
    pub e: Option<Vec<u32>>,
    #[arg(long)]
    pub c: Option<u32>,
    /// Relative-resolution step for `chainmap`; all steps when omitted.
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub max_deg: Option<i64>,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum CacheAction {
    Clear,
    Stats,
}
