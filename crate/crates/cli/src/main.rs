mod args;
mod commands;
mod output;

use std::fmt;
use std::process::ExitCode;

use clap::Parser;
use qgame_core::{Orientation, PayoffTable};

use args::{Cli, Command, OrientationArg};
use commands::Context;

#[derive(Debug)]
pub enum CliError {
    /// Bad flag values or an unusable output path.
    Usage(String),
    /// A search that could not bracket or converge.
    Numerical(String),
    /// A verification run whose checks did not hold.
    Failed,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) | CliError::Failed => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "error: {msg}"),
            CliError::Numerical(msg) => write!(f, "numerical failure: {msg}"),
            CliError::Failed => write!(f, "verification failed"),
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let common = cli.common;
    if let Some(threads) = common.threads {
        if threads == 0 {
            return Err(CliError::Usage("invalid value for --threads: need at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Usage(format!("--threads: {e}")))?;
    }
    let [r, p, t, s] = common.payoffs;
    let table = PayoffTable::new(r, p, t, s)
        .map_err(|e| CliError::Usage(format!("invalid value for --payoffs: {e}")))?;
    let ctx = Context {
        table,
        orientation: match common.orientation {
            OrientationArg::AdjointSource => Orientation::AdjointSource,
            OrientationArg::GateSource => Orientation::GateSource,
        },
        format: common.format,
    };

    let mut failed = false;
    let text = match cli.command {
        Command::Play { gamma, alice, bob } => commands::play(&ctx, gamma, alice, bob)?,
        Command::Surface { gamma, steps } => commands::surface(&ctx, gamma, steps)?,
        Command::MaximinCurve { steps, grid } => commands::maximin_curve(&ctx, steps, grid)?,
        Command::Miracle { steps } => commands::miracle(&ctx, steps)?,
        Command::Nash { gamma, grid, epsilon } => commands::nash(&ctx, gamma, grid, epsilon)?,
        Command::Threshold { tol, grid } => commands::threshold(&ctx, tol, grid)?,
        Command::Verify { gamma, grid } => {
            let (text, passed) = commands::verify(&ctx, gamma, grid)?;
            failed = !passed;
            text
        }
    };

    match &common.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write --out {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    if failed {
        return Err(CliError::Failed);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
