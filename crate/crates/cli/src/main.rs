use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lc_core::Error;

mod commands;

#[derive(Parser)]
#[command(name = "lc", version, about = "Linear complexity profiles of multisequences over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the continued fraction engine on a sequence file and write its profile.
    Profile {
        #[arg(long = "in")]
        input: PathBuf,
        /// Profile CSV; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a multisequence whose normalized profile has the given limits.
    Synthesize(SynthesizeArgs),
    /// Monte Carlo statistics of the battery-discharge model.
    Bdm(BdmArgs),
    /// Profile by brute-force linear algebra.
    Oracle {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        n: usize,
        /// Compare against the engine; exit 3 on any difference.
        #[arg(long)]
        diff: bool,
    },
    /// Tail extrema and bound audit of a sequence file.
    Check(CheckArgs),
    /// Vertices of the admissible region, and classification of a pair.
    Region {
        #[arg(long = "M")]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long = "I", requires = "s")]
        i: Option<String>,
        #[arg(long = "S", requires = "i")]
        s: Option<String>,
    },
}

#[derive(Args)]
struct SynthesizeArgs {
    #[arg(long)]
    q: String,
    #[arg(long = "M")]
    m: usize,
    #[arg(long = "I")]
    i: String,
    #[arg(long = "S")]
    s: String,
    /// Active sequences; defaults to the largest admissible count.
    #[arg(long = "K")]
    k: Option<usize>,
    #[arg(long)]
    n: usize,
    /// One bit per hexagon: `1` appends an extra discharge period after it.
    #[arg(long)]
    gaps: Option<String>,
    /// Sequence file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    pattern: Option<PathBuf>,
    #[arg(long)]
    trajectory: Option<PathBuf>,
    /// Symbol code used as the nonzero discrepancy.
    #[arg(long)]
    nonzero: Option<u32>,
    /// Re-run the engine on the output and require the planned pattern.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct BdmArgs {
    #[arg(long)]
    q: u32,
    #[arg(long = "M")]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    trials: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    /// Tolerance on `|L(n)/n - M/(M+1)|`.
    #[arg(long, default_value = "1/100")]
    eps: String,
    #[arg(long, default_value_t = 100)]
    checkpoints: usize,
    /// Per-trial seeds and final values.
    #[arg(long)]
    trials_out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Trailing fraction of the prefix used for the extrema.
    #[arg(long, default_value = "1/2")]
    tail: String,
    #[arg(long = "I", requires = "s")]
    i: Option<String>,
    #[arg(long = "S", requires = "i")]
    s: Option<String>,
    #[arg(long, default_value = "1/100")]
    tol: String,
    /// Distance tolerated when locating the extrema in the region.
    #[arg(long, default_value = "1/50")]
    slack: String,
}

/// Outcome of a command that ran to completion.
pub enum Outcome {
    Ok,
    Mismatch,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Io(_) | Error::Parse { .. } => 1,
        Error::GuardBreach { .. } => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Profile { input, out } => commands::profile(&input, out.as_deref()),
        Command::Synthesize(args) => commands::synthesize(&args),
        Command::Bdm(args) => commands::bdm(&args),
        Command::Oracle { input, n, diff } => commands::oracle(&input, n, diff),
        Command::Check(args) => commands::check(&args),
        Command::Region { m, out, i, s } => commands::region(m, out.as_deref(), i.as_deref().zip(s.as_deref())),
    };
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(3),
        Err(e) => {
            eprintln!("lc: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
