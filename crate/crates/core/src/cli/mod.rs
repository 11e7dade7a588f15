//! The `relfm` command line: build standalone and relative indexes, query
//! them, print statistics, run the self-check suite and benchmark.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O or
//! input error. `RFMX_THREADS` caps the worker pool.

mod commands;

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;

pub use commands::StatsReport;

#[derive(Parser, Debug)]
#[command(name = "relfm", version, about = "FM-indexes and relative FM-indexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a standalone FM-index.
    Build {
        input: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        /// Suffix-array sample rate.
        #[arg(long, default_value_t = crate::fmindex::DEFAULT_SAMPLE_RATE)]
        rate: usize,
        /// Read the first FASTA record (DNA alphabet) instead of raw bytes.
        #[arg(long)]
        fasta: bool,
    },
    /// Build a relative index for a target against a reference index.
    BuildRelative {
        /// Reference container written by `build`.
        #[arg(long = "ref")]
        reference: PathBuf,
        target: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Lcs)]
        mode: Mode,
        #[command(flatten)]
        partition: PartitionArgs,
        /// Longest LF-walk allowed when locating; rows beyond it get escapes.
        #[arg(long)]
        walk_cap: Option<usize>,
    },
    /// Answer pattern queries, one pattern per line.
    Query {
        #[command(subcommand)]
        kind: QueryKind,
    },
    /// Describe a container.
    Stats {
        index: PathBuf,
        /// Reference container, needed for relative indexes.
        #[arg(long = "ref")]
        reference: Option<PathBuf>,
    },
    /// Compare every operation against brute force.
    Verify {
        reference: Option<PathBuf>,
        target: Option<PathBuf>,
        /// Text length of generated pairs.
        #[arg(long, default_value_t = 2000)]
        n: usize,
        /// Number of generated pairs.
        #[arg(long, default_value_t = 3)]
        seeds: u64,
        #[arg(long)]
        fasta: bool,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<FaultArg>,
    },
    /// Size and query-time comparison on a generated pair.
    Bench {
        #[arg(long, default_value_t = 200_000)]
        n: usize,
        /// Substitution rate of the target.
        #[arg(long, default_value_t = 0.005)]
        mutation: f64,
        #[arg(long, default_value_t = 0.001)]
        indels: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        patterns: usize,
        #[arg(long, default_value_t = 56)]
        pattern_len: usize,
        #[arg(long, default_value_t = crate::fmindex::DEFAULT_SAMPLE_RATE)]
        rate: usize,
        #[command(flatten)]
        partition: PartitionArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum QueryKind {
    Count(QueryArgs),
    Locate(QueryArgs),
}

#[derive(Args, Debug)]
pub struct QueryArgs {
    pub index: PathBuf,
    pub patterns: PathBuf,
    /// Reference container, needed for relative indexes.
    #[arg(long = "ref")]
    pub reference: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct PartitionArgs {
    #[arg(long, default_value_t = 1024)]
    pub max_block: usize,
    #[arg(long, default_value_t = 32)]
    pub max_depth: usize,
    #[arg(long, default_value_t = 50_000)]
    pub max_diag: usize,
    #[arg(long, default_value_t = 50_000)]
    pub hard_gap: usize,
}

impl PartitionArgs {
    pub fn spec(&self) -> crate::lcsalign::PartitionSpec {
        crate::lcsalign::PartitionSpec {
            max_block: self.max_block,
            max_depth: self.max_depth,
            max_diag: self.max_diag,
            hard_gap: self.hard_gap,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Counting only, over an approximate BWT LCS.
    Lcs,
    /// Counting and locating, over a BWT-invariant subsequence.
    Invariant,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaultArg {
    RelRank,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    VerifyFailed,
    Input(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerifyFailed => 1,
            CliError::Usage(_) => 2,
            CliError::Input(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::VerifyFailed => write!(f, "verification failed"),
            CliError::Input(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Input(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.into())
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("RFMX_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    configure_threads();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match commands::run(cli.command, &mut out) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("relfm: {e}");
            e.exit_code()
        }
    }
}
