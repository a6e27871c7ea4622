//! Command-line front end for the quantum roulette engine.
//!
//! Subcommands:
//! - `run`: one game, JSON report on stdout.
//! - `sweep`: noise/strategy grids, CSV or JSON, grid-ordered rows.
//! - `verify`: cross-module invariant checks with residual summary.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage/validation error,
//! 3 I/O error.

mod format;
mod range;
mod report;
mod sweep;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qroulette::{ClassicalStrategy, GameConfig, NoiseSpec, Permutation};

/// One-line key of the swap of the first two states; the reference formula
/// for the three-state noisy game only covers strategies on this key.
pub const SWAP_KEY: &str = "2 1 3";

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "qroulette",
    version,
    about = "N-state quantum roulette: quantum vs. classical strategies, with optional depolarizing noise"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a single game and print a JSON report.
    Run(RunArgs),
    /// Sweep noise and strategy grids; one output row per grid point.
    Sweep(SweepArgs),
    /// Run the invariant verification suite and print residuals.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Number of roulette states (1..=9).
    #[arg(long)]
    n: usize,
    /// Basis state Alice places, 1-based.
    #[arg(long)]
    initial: usize,
    /// Basis state Bob steers to, 1-based.
    #[arg(long)]
    target: usize,
    /// Strategy file (JSON). A missing file means the identity-only strategy.
    #[arg(long)]
    alice: Option<PathBuf>,
    /// Depolarizing noise strength in [0, 1]; omitting it runs noiselessly.
    #[arg(long = "noise-r")]
    noise_r: Option<f64>,
}

#[derive(Args)]
struct SweepArgs {
    /// Number of roulette states (1..=9).
    #[arg(long)]
    n: usize,
    /// Basis state Alice places, 1-based.
    #[arg(long)]
    initial: usize,
    /// Basis state Bob steers to, 1-based.
    #[arg(long)]
    target: usize,
    /// Base strategy file; swept keys override its entries per grid point.
    #[arg(long)]
    alice: Option<PathBuf>,
    /// Noise grid start:stop:step; omitting it sweeps noiselessly.
    #[arg(long)]
    r: Option<String>,
    /// Strategy probability grid, e.g. --p "2 1 3"=0:1:0.25 (repeatable).
    #[arg(long = "p", value_name = "KEY=START:STOP:STEP")]
    p: Vec<String>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Number of roulette states (1..=9).
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Random trials per randomized check.
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// RNG seed; equal seeds reproduce the residual summary byte for byte.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(args) => cmd_run(&args),
        Command::Sweep(args) => sweep::cmd_sweep(&args),
        Command::Verify(args) => verify::cmd_verify(&args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn check_n(n: usize) -> Result<(), CliError> {
    if (1..=9).contains(&n) {
        Ok(())
    } else {
        Err(CliError::usage(format!("--n must be in 1..=9, got {n}")))
    }
}

/// Loads the strategy file named by `--alice`. A missing path yields the
/// identity-only strategy (noted on stderr); a present but malformed file is
/// a validation error.
fn load_strategy(path: Option<&Path>, n: usize) -> Result<ClassicalStrategy, CliError> {
    let empty = || ClassicalStrategy::empty(n).map_err(|e| CliError::usage(format!("--n: {e}")));
    let Some(path) = path else {
        return empty();
    };
    if !path.exists() {
        eprintln!(
            "note: strategy file {} not found, using the identity-only strategy",
            path.display()
        );
        return empty();
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::io(format!("--alice: cannot read {}: {e}", path.display())))?;
    let strategy = ClassicalStrategy::from_json(&text)
        .map_err(|e| CliError::usage(format!("--alice: {e}")))?;
    if strategy.n() != n {
        return Err(CliError::usage(format!(
            "--alice: strategy is for n={}, but --n is {n}",
            strategy.n()
        )));
    }
    Ok(strategy)
}

fn build_config(
    n: usize,
    initial: usize,
    target: usize,
    alice: ClassicalStrategy,
    noise_r: Option<f64>,
) -> Result<GameConfig, CliError> {
    let noise = match noise_r {
        Some(r) => Some(
            NoiseSpec::depolarizing(r).map_err(|e| CliError::usage(format!("--noise-r: {e}")))?,
        ),
        None => None,
    };
    GameConfig::new(n, initial, alice, target, noise).map_err(|e| {
        let flag = match &e {
            qroulette::Error::OutOfRange { name, .. } if *name == "initial" => "--initial",
            qroulette::Error::OutOfRange { name, .. } if *name == "target" => "--target",
            _ => "--n",
        };
        CliError::usage(format!("{flag}: {e}"))
    })
}

/// The reference-formula columns apply only to three-state noisy games whose
/// strategy keys are confined to the swap of the first two states.
fn formula_applies(n: usize, noisy: bool, strategy: &ClassicalStrategy) -> bool {
    n == 3 && noisy && strategy.probs().keys().all(|p| p.one_based_key() == SWAP_KEY)
}

fn swap_probability(strategy: &ClassicalStrategy) -> f64 {
    Permutation::from_one_based_key(SWAP_KEY, 3)
        .map(|p| strategy.probability_of(&p))
        .unwrap_or(0.0)
}

fn cmd_run(args: &RunArgs) -> Result<u8, CliError> {
    check_n(args.n)?;
    let alice = load_strategy(args.alice.as_deref(), args.n)?;
    let cfg = build_config(args.n, args.initial, args.target, alice, args.noise_r)?;
    let transcript = qroulette::run(&cfg).map_err(|e| CliError::usage(e.to_string()))?;

    let paper = if formula_applies(cfg.n(), cfg.noise().is_some(), cfg.alice()) {
        let r = cfg.noise().map(NoiseSpec::r).unwrap_or(0.0);
        let p1 = swap_probability(cfg.alice());
        let value =
            qroulette::paper_win_formula(r, p1).map_err(|e| CliError::usage(e.to_string()))?;
        Some((value, (transcript.win_probability - value).abs()))
    } else {
        None
    };

    print!("{}", report::render_run_report(&cfg, &transcript, paper));
    Ok(0)
}
