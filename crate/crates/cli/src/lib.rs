//! Argument parsing and dispatch for the `epr-universe` binary.
//!
//! [`run`] takes the full argv and returns the exit code, writing the report
//! to `stdout` (or `--out`) and any error object to `stderr`.

mod commands;
mod error;
mod input;
mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use epr_universe::symmetry::DEFAULT_FRUCHT_LIMIT;
use epr_universe::universe::DEFAULT_ENUMERATION_LIMIT;

pub use error::CliError;

/// Environment variable capping the worker threads of `--ensemble` runs.
pub const THREADS_ENV: &str = "EPR_UNIVERSE_THREADS";

#[derive(Debug, Parser)]
#[command(name = "epr-universe", version, about = "Deterministic EPR-complex simulator")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Input file: a complex, a group, or a report whose `result` holds one. Repeatable.
    #[arg(long = "in", global = true, value_name = "PATH")]
    pub inputs: Vec<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Seed for every random choice (gnp graphs, decay chains).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Largest number of free pairs whose aspects are listed one by one.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_LIMIT)]
    pub limit_enum: usize,
    /// Largest group order accepted by `frucht`.
    #[arg(long, global = true, default_value_t = DEFAULT_FRUCHT_LIMIT)]
    pub limit_frucht: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    /// Plot-ready table; supported by `gen`, `chain`, `entropy`, `expand` and `spectral`.
    Csv,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a complex. Emits the bare complex, not a report.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        /// Embed the complex in a universe of this many objects.
        #[arg(long, global = true)]
        n_phi: Option<usize>,
    },
    /// Order queries: `leq A B`, `join ASPECT PART...`, `meet E A`, `aspects E`.
    Poset {
        #[command(subcommand)]
        op: PosetOp,
    },
    /// Automorphism group of the input complex.
    Aut {
        /// Also run the exhaustive search (at most 10 objects).
        #[arg(long)]
        brute: bool,
    },
    /// A complex whose automorphism group is the input group.
    Frucht {
        /// Named group instead of `--in`: trivial, zN, zAxzB..., sN.
        #[arg(long)]
        group: Option<String>,
    },
    /// Laplacian eigenbasis of the input complex.
    Spectral {
        #[arg(long)]
        vectors: bool,
    },
    /// Generate a decay chain and its entropy series.
    Chain {
        #[command(flatten)]
        chain: ChainArgs,
        /// Include every basis complex and aspect.
        #[arg(long)]
        full: bool,
    },
    /// Entropy series of a decay chain, optionally over many seeds.
    Entropy {
        #[command(flatten)]
        chain: ChainArgs,
        #[command(flatten)]
        ensemble: EnsembleArgs,
    },
    /// Spread and expansion factor series of a decay chain.
    Expand {
        #[command(flatten)]
        chain: ChainArgs,
        #[command(flatten)]
        ensemble: EnsembleArgs,
    },
    /// Vertex-transitivity score of the input complex.
    Flatness,
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    Cycle { n: usize },
    Complete { n: usize },
    Path { n: usize },
    /// Object 0 is the centre.
    Star { n: usize },
    Petersen,
    /// `G(n, p)`: pairs visited in lexicographic order, each kept when a
    /// ChaCha8 draw seeded by `--seed` falls below `p`.
    Gnp { n: usize, p: f64 },
    /// Validate and canonicalize the complex given by `--in`.
    File,
}

#[derive(Debug, Subcommand)]
pub enum PosetOp {
    Leq,
    Join,
    Meet,
    Aspects,
}

#[derive(Debug, Clone, Args)]
pub struct ChainArgs {
    #[arg(long)]
    pub removals: usize,
    #[arg(long)]
    pub steps: usize,
    /// resolution or diffusion.
    #[arg(long, default_value = "resolution")]
    pub measure: String,
    /// Reattach cut connections of removed objects to matter.
    #[arg(long)]
    pub rewire: bool,
}

#[derive(Debug, Clone, Args)]
pub struct EnsembleArgs {
    /// Run seeds `seed..seed + N` and report per-seed fractions.
    #[arg(long, value_name = "N")]
    pub ensemble: Option<usize>,
}

/// Parses `argv` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let threads = match threads_from_env() {
        Ok(t) => t,
        Err(e) => return fail(e, stderr),
    };
    match commands::execute(&cli, threads).and_then(|text| emit(&cli.global, &text, stdout)) {
        Ok(()) => 0,
        Err(e) => fail(e, stderr),
    }
}

fn fail(e: CliError, stderr: &mut dyn Write) -> i32 {
    let _ = writeln!(stderr, "{}", e.to_json());
    e.exit_code()
}

fn emit(global: &GlobalArgs, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &global.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Write {
            path: path.clone(),
            message: e.to_string(),
        }),
        None => stdout.write_all(text.as_bytes()).map_err(|e| CliError::Write {
            path: "<stdout>".into(),
            message: e.to_string(),
        }),
    }
}

fn threads_from_env() -> Result<usize, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(1),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
        },
    }
}
