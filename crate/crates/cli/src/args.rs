use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "qgame", version, about = "Quantum Prisoners' Dilemma: single games, sweeps and equilibrium reports")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Payoff table as r,p,t,s (requires t > r > p > s)
    #[arg(long, global = true, value_parser = parse_payoffs, default_value = "3,1,5,0")]
    pub payoffs: [f64; 4],

    /// Output format; tables default to csv, reports to json
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads (defaults to the number of cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Which side of the board carries the entangling gate
    #[arg(long, global = true, value_enum, default_value = "adjoint-source")]
    pub orientation: OrientationArg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Play one game and print the final state, outcome probabilities and payoffs
    Play {
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2, allow_negative_numbers = true)]
        gamma: f64,
        /// Alice's strategy as theta,phi in radians
        #[arg(long, value_parser = parse_angles, allow_negative_numbers = true)]
        alice: (f64, f64),
        /// Bob's strategy as theta,phi in radians
        #[arg(long, value_parser = parse_angles, allow_negative_numbers = true)]
        bob: (f64, f64),
    },
    /// Alice's payoff over the one-parameter strategy path t in [-1, 1] for both players
    Surface {
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2, allow_negative_numbers = true)]
        gamma: f64,
        /// Path resolution per player
        #[arg(long, default_value_t = 101)]
        steps: usize,
    },
    /// Guaranteed payoff against a classical opponent as a function of gamma
    MaximinCurve {
        /// Number of gamma values on [0, pi/2]
        #[arg(long, default_value_t = 65)]
        steps: usize,
        #[arg(long, value_parser = parse_grid, default_value = "101x51")]
        grid: (usize, usize),
    },
    /// Payoffs at full entanglement against Bob's classical U(theta, 0)
    Miracle {
        /// Number of theta values on [0, pi]
        #[arg(long, default_value_t = 1001)]
        steps: usize,
    },
    /// Nash equilibria, Pareto optimality and dominant strategy on a grid
    Nash {
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2, allow_negative_numbers = true)]
        gamma: f64,
        #[arg(long, value_parser = parse_grid, default_value = "101x51")]
        grid: (usize, usize),
        #[arg(long, default_value_t = 1e-3, allow_negative_numbers = true)]
        epsilon: f64,
    },
    /// Entanglement threshold beyond which the maximin strategy leaves defection
    Threshold {
        #[arg(long, default_value_t = 1e-4, allow_negative_numbers = true)]
        tol: f64,
        #[arg(long, value_parser = parse_grid, default_value = "101x51")]
        grid: (usize, usize),
    },
    /// Check the classical correspondence conditions and the bound around U(0, pi/2)
    Verify {
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2, allow_negative_numbers = true)]
        gamma: f64,
        #[arg(long, value_parser = parse_grid, default_value = "101x51")]
        grid: (usize, usize),
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrientationArg {
    AdjointSource,
    GateSource,
}

fn parse_floats<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(format!("expected {N} comma-separated numbers, got {}", parts.len()));
    }
    let mut out = [0.0; N];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.parse().map_err(|_| format!("'{p}' is not a number"))?;
    }
    Ok(out)
}

pub fn parse_angles(s: &str) -> Result<(f64, f64), String> {
    let [theta, phi] = parse_floats::<2>(s)?;
    Ok((theta, phi))
}

pub fn parse_payoffs(s: &str) -> Result<[f64; 4], String> {
    parse_floats::<4>(s)
}

pub fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (t, p) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected THETAxPHI, got '{s}'"))?;
    let t = t.trim().parse().map_err(|_| format!("'{t}' is not a count"))?;
    let p = p.trim().parse().map_err(|_| format!("'{p}' is not a count"))?;
    Ok((t, p))
}
