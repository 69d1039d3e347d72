//! `mixbound`: analyse a Markov chain, compare mixing-time bounds with the
//! exact mixing time, build strong stationary duals and evaluate Schur
//! polynomials.
//!
//! Exit status is 0 on success, 1 when a computation fails and 2 for bad
//! input.

mod commands;
mod source;
mod table;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mixbound::distance::Budget;

#[derive(Debug, Parser)]
#[command(name = "mixbound", version, about = "Spectral mixing-time bounds for finite Markov chains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Stationary law, reversibility and spectrum
    Analyze(commands::AnalyzeArgs),
    /// Every bound next to the exact mixing time, as CSV
    Bounds(commands::BoundsArgs),
    /// Intertwining link, dual pure-birth chain and separation tail
    Dual(commands::DualArgs),
    /// Schur polynomials, tableau counts and companion-matrix powers
    Schur(commands::SchurArgs),
    /// Print one of the standard chains
    Example(commands::ExampleArgs),
    /// Worst-start TV and separation distance over time, as CSV
    Profile(commands::ProfileArgs),
}

#[derive(Debug)]
pub enum CliError {
    Core(mixbound::Error),
    Usage(String),
}

impl From<mixbound::Error> for CliError {
    fn from(e: mixbound::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if !e.is_input_error() => 1,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(msg) => f.write_str(msg),
        }
    }
}

/// `MIXBOUND_BUDGET` is either a step count or `steps=N,states=M`.
fn budget_from_env() -> Result<Budget, CliError> {
    let mut budget = Budget::default();
    let Ok(raw) = std::env::var("MIXBOUND_BUDGET") else { return Ok(budget) };
    let bad = || CliError::Usage(format!("MIXBOUND_BUDGET: cannot parse {raw:?}"));
    if let Ok(steps) = raw.trim().parse() {
        budget.max_steps = steps;
        return Ok(budget);
    }
    for part in raw.split(',') {
        let (key, value) = part.split_once('=').ok_or_else(bad)?;
        let value: usize = value.trim().parse().map_err(|_| bad())?;
        match key.trim() {
            "steps" => budget.max_steps = value,
            "states" => budget.max_states = value,
            _ => return Err(bad()),
        }
    }
    Ok(budget)
}

fn run(cli: Cli) -> Result<String, CliError> {
    let budget = budget_from_env()?;
    match cli.command {
        Command::Analyze(args) => commands::analyze(&args),
        Command::Bounds(args) => commands::bounds(&args, &budget),
        Command::Dual(args) => commands::dual(&args, &budget),
        Command::Schur(args) => commands::schur(&args),
        Command::Example(args) => commands::example(&args),
        Command::Profile(args) => commands::profile(&args, &budget),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
