use std::f64::consts::{FRAC_PI_2, PI};

use qgame_core::analysis::{
    analytic_nash_bound_check, dominant_strategy, find_nash, maximin, threshold_gamma_with,
    verify_correspondence, BoundCheck, CorrespondenceReport, EquilibriumReport,
};
use qgame_core::{figure_path_strategy, Error, Game, Orientation, PayoffTable, StrategyGrid, StrategyParams};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::Format;
use crate::output::{angle, number, to_json, Cell, Table};
use crate::CliError;

pub struct Context {
    pub table: PayoffTable,
    pub orientation: Orientation,
    pub format: Option<Format>,
}

impl Context {
    fn game(&self, gamma: f64) -> Result<Game, CliError> {
        Game::with_orientation(gamma, self.table, self.orientation).map_err(|e| usage("--gamma", e))
    }

    fn table_output(&self, table: Table) -> String {
        match self.format.unwrap_or(Format::Csv) {
            Format::Csv => table.to_csv(),
            Format::Json => table.to_json(),
        }
    }
}

fn usage(flag: &str, err: Error) -> CliError {
    CliError::Usage(format!("invalid value for {flag}: {err}"))
}

fn grid(dims: (usize, usize)) -> Result<StrategyGrid, CliError> {
    StrategyGrid::new(dims.0, dims.1).map_err(|e| usage("--grid", e))
}

fn steps(n: usize) -> Result<usize, CliError> {
    if n < 2 {
        return Err(CliError::Usage(format!("invalid value for --steps: need at least 2, got {n}")));
    }
    Ok(n)
}

fn strategy(flag: &str, (theta, phi): (f64, f64)) -> Result<StrategyParams, CliError> {
    StrategyParams::new(theta, phi).map_err(|e| usage(flag, e))
}

fn linspace(lo: f64, hi: f64, n: usize, k: usize) -> f64 {
    if k + 1 == n {
        hi
    } else {
        lo + (hi - lo) * k as f64 / (n - 1) as f64
    }
}

#[derive(Serialize)]
struct Amplitude {
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct PlayReport {
    gamma: f64,
    alice: StrategyParams,
    bob: StrategyParams,
    final_state: [Amplitude; 4],
    distribution: qgame_core::OutcomeDistribution,
    payoffs: qgame_core::PayoffPair,
}

pub fn play(ctx: &Context, gamma: f64, alice: (f64, f64), bob: (f64, f64)) -> Result<String, CliError> {
    let game = ctx.game(gamma)?;
    let result = game.play(strategy("--alice", alice)?, strategy("--bob", bob)?);
    let amp = result.final_state.amplitudes().map(|z| Amplitude { re: z.re, im: z.im });

    match ctx.format.unwrap_or(Format::Json) {
        Format::Json => Ok(to_json(&PlayReport {
            gamma: result.gamma,
            alice: result.strategy_a,
            bob: result.strategy_b,
            final_state: amp,
            distribution: result.distribution,
            payoffs: result.payoffs,
        })),
        Format::Csv => {
            let mut row = vec![
                Cell::Angle(result.gamma),
                Cell::Angle(result.strategy_a.theta()),
                Cell::Angle(result.strategy_a.phi()),
                Cell::Angle(result.strategy_b.theta()),
                Cell::Angle(result.strategy_b.phi()),
            ];
            row.extend(amp.iter().flat_map(|a| [Cell::Number(a.re), Cell::Number(a.im)]));
            row.extend(result.distribution.as_array().map(Cell::Number));
            row.extend([Cell::Number(result.payoffs.alice), Cell::Number(result.payoffs.bob)]);
            Ok(Table {
                header: &[
                    "gamma", "theta_a", "phi_a", "theta_b", "phi_b", "cc_re", "cc_im", "cd_re", "cd_im",
                    "dc_re", "dc_im", "dd_re", "dd_im", "p_cc", "p_cd", "p_dc", "p_dd", "payoff_a",
                    "payoff_b",
                ],
                rows: vec![row],
            }
            .to_csv())
        }
    }
}

/// Path parameter `t_k` on `[−1, 1]`, computed so that grid values print cleanly.
fn path_t(n: usize, k: usize) -> f64 {
    (2.0 * k as f64 - (n - 1) as f64) / (n - 1) as f64
}

pub fn surface(ctx: &Context, gamma: f64, n: usize) -> Result<String, CliError> {
    let game = ctx.game(gamma)?;
    let n = steps(n)?;
    let ts: Vec<f64> = (0..n).map(|k| path_t(n, k)).collect();
    let params: Vec<StrategyParams> = ts
        .iter()
        .map(|&t| figure_path_strategy(t).expect("t on [-1, 1]"))
        .collect();
    let rows: Vec<Vec<Cell>> = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let (ia, ib) = (idx / n, idx % n);
            let payoff = game.alice_payoff(params[ia], params[ib]);
            vec![Cell::Number(ts[ia]), Cell::Number(ts[ib]), Cell::Number(payoff)]
        })
        .collect();
    Ok(ctx.table_output(Table {
        header: &["t_a", "t_b", "payoff_a"],
        rows,
    }))
}

pub fn maximin_curve(ctx: &Context, n: usize, dims: (usize, usize)) -> Result<String, CliError> {
    let n = steps(n)?;
    let grid = grid(dims)?;
    let games: Vec<Game> = (0..n)
        .map(|k| ctx.game(linspace(0.0, FRAC_PI_2, n, k)))
        .collect::<Result<_, _>>()?;
    let rows: Vec<Vec<Cell>> = games
        .par_iter()
        .map(|game| {
            let p = maximin(game, &grid);
            vec![
                Cell::Angle(p.gamma),
                Cell::Number(p.m),
                Cell::Angle(p.argmax_strategy.theta()),
                Cell::Angle(p.argmax_strategy.phi()),
            ]
        })
        .collect();
    Ok(ctx.table_output(Table {
        header: &["gamma", "m", "argmax_theta", "argmax_phi"],
        rows,
    }))
}

pub fn miracle(ctx: &Context, n: usize) -> Result<String, CliError> {
    let n = steps(n)?;
    let game = ctx.game(FRAC_PI_2)?;
    let rows: Vec<Vec<Cell>> = (0..n)
        .into_par_iter()
        .map(|k| {
            let theta = linspace(0.0, PI, n, k);
            let bob = StrategyParams::classical(theta).expect("theta on [0, pi]");
            let vs_m = game.payoffs(StrategyParams::MIRACLE, bob);
            vec![
                Cell::Angle(theta),
                Cell::Number(game.alice_payoff(StrategyParams::COOPERATE, bob)),
                Cell::Number(game.alice_payoff(StrategyParams::DEFECT, bob)),
                Cell::Number(vs_m.alice),
                Cell::Number(vs_m.bob),
            ]
        })
        .collect();
    Ok(ctx.table_output(Table {
        header: &["theta", "alice_c", "alice_d", "alice_m", "bob_vs_m"],
        rows,
    }))
}

#[derive(Serialize)]
struct NashReport {
    gamma: f64,
    epsilon: f64,
    grid: String,
    equilibria: Vec<EquilibriumReport>,
    dominant: Option<StrategyParams>,
}

pub fn nash(ctx: &Context, gamma: f64, dims: (usize, usize), epsilon: f64) -> Result<String, CliError> {
    let game = ctx.game(gamma)?;
    let grid = grid(dims)?;
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(usage("--epsilon", Error::NotPositive("epsilon")));
    }
    let report = NashReport {
        gamma,
        epsilon,
        grid: format!("{}x{}", dims.0, dims.1),
        equilibria: find_nash(&game, &grid, epsilon),
        dominant: dominant_strategy(&game, &grid),
    };
    match ctx.format.unwrap_or(Format::Json) {
        Format::Json => Ok(to_json(&report)),
        Format::Csv => {
            let mut out = String::from(
                "theta_a,phi_a,theta_b,phi_b,payoff_a,payoff_b,is_nash,nash_slack,is_pareto\n",
            );
            for e in &report.equilibria {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    angle(e.alice.theta()),
                    angle(e.alice.phi()),
                    angle(e.bob.theta()),
                    angle(e.bob.phi()),
                    number(e.payoffs.alice),
                    number(e.payoffs.bob),
                    e.is_nash,
                    number(e.nash_slack),
                    e.is_pareto
                ));
            }
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct ThresholdReport {
    gamma_th: f64,
    reference: f64,
    difference: f64,
}

pub fn threshold(ctx: &Context, tol: f64, dims: (usize, usize)) -> Result<String, CliError> {
    let grid = grid(dims)?;
    let gamma_th = threshold_gamma_with(ctx.orientation, &ctx.table, &grid, tol).map_err(|e| {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            usage("--tol", e)
        }
    })?;
    let reference = (1.0 / 5f64.sqrt()).asin();
    let report = ThresholdReport {
        gamma_th,
        reference,
        difference: gamma_th - reference,
    };
    match ctx.format.unwrap_or(Format::Json) {
        Format::Json => Ok(to_json(&report)),
        Format::Csv => Ok(format!(
            "gamma_th,reference,difference\n{},{},{}\n",
            angle(report.gamma_th),
            angle(report.reference),
            number(report.difference)
        )),
    }
}

#[derive(Serialize)]
struct VerifyReport {
    correspondence: CorrespondenceReport,
    bound: BoundCheck,
    passed: bool,
}

/// Tolerance for the correspondence residuals and the closed-form comparison.
const VERIFY_TOL: f64 = 1e-10;

pub fn verify(ctx: &Context, gamma: f64, dims: (usize, usize)) -> Result<(String, bool), CliError> {
    let grid = grid(dims)?;
    let correspondence = verify_correspondence(gamma).map_err(|e| usage("--gamma", e))?;
    let bound = analytic_nash_bound_check(&grid);
    let passed = correspondence.holds(VERIFY_TOL) && bound.max_deviation <= VERIFY_TOL && bound.within_bound();
    let report = VerifyReport {
        correspondence,
        bound,
        passed,
    };
    let text = match ctx.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&report),
        Format::Csv => format!(
            "gamma,commutator_dd,commutator_dc,commutator_cd,factorization_deviation,bound_deviation,bound_max_payoff,passed\n{},{},{},{},{},{},{},{}\n",
            angle(correspondence.gamma),
            number(correspondence.commutator_dd),
            number(correspondence.commutator_dc),
            number(correspondence.commutator_cd),
            number(correspondence.factorization_deviation),
            number(bound.max_deviation),
            number(bound.max_payoff),
            passed
        ),
    };
    Ok((text, passed))
}
