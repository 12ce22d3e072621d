use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{argmax_first, argmin_first, REFINE_TOL};
use crate::error::{Error, Result};
use crate::game::{Game, PayoffTable};
use crate::grid::StrategyGrid;
use crate::quantum::{strategy_unitary, Orientation, StrategyParams, Unitary2};
use crate::search::{local_bracket, maximize, minimize, nelder_mead_max, TIE_TOL};

/// Distance in `(θ, φ)` from defection beyond which the maximin strategy has jumped.
pub const THRESHOLD_JUMP: f64 = 0.1;

/// Coarse γ samples used to confirm the jump indicator switches exactly once.
const BRACKET_SAMPLES: usize = 9;

const MAX_OUTER_SWEEPS: usize = 32;
const SIMPLEX_ITERATIONS: usize = 500;

/// Alice's guaranteed payoff against a classical Bob at one entanglement level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaximinPoint {
    pub gamma: f64,
    pub m: f64,
    pub argmax_strategy: StrategyParams,
    /// Bob's classical reply that holds Alice to `m`.
    pub worst_reply: StrategyParams,
}

struct ClassicalReplies {
    thetas: Vec<f64>,
    unitaries: Vec<Unitary2>,
    spacing: f64,
}

impl ClassicalReplies {
    fn new(grid: &StrategyGrid) -> Self {
        let nodes = grid.classical_nodes();
        Self {
            thetas: nodes.iter().map(|n| n.theta()).collect(),
            unitaries: nodes.iter().map(|&n| strategy_unitary(n)).collect(),
            spacing: grid.theta_spacing(),
        }
    }

    /// Bob's most damaging `U(θ, 0)` against `alice`, refined off the grid.
    ///
    /// Every local minimum on the grid is refined, since near the maximin
    /// optimum two different replies typically hold Alice to the same payoff.
    fn worst(&self, game: &Game, alice: &Unitary2) -> (f64, f64) {
        let values: Vec<f64> = self
            .unitaries
            .iter()
            .map(|b| game.payoffs_of(alice, b).alice)
            .collect();
        let payoff = |theta: f64| {
            let b = strategy_unitary(StrategyParams::classical(theta).expect("bracket in range"));
            game.payoffs_of(alice, &b).alice
        };
        let last = values.len() - 1;
        let mut best = (self.thetas[argmin_first(&values)], values[argmin_first(&values)]);
        for k in 0..=last {
            let left = k == 0 || values[k] <= values[k - 1];
            let right = k == last || values[k] <= values[k + 1];
            if !(left && right) {
                continue;
            }
            let (lo, hi) = local_bracket(self.thetas[k], self.spacing, 0.0, PI);
            let (theta, v) = minimize(payoff, lo, hi, (self.thetas[k], values[k]), REFINE_TOL);
            if v < best.1 - TIE_TOL {
                best = (theta, v);
            }
        }
        best
    }
}

/// `m = max over Alice's grid of min over Bob's classical θ` of Alice's payoff.
///
/// Bob's replies use the θ axis of `grid_a` with φ fixed to 0. Both the inner
/// minimum and the outer maximum are refined by golden-section search; the
/// outer refinement alternates θ/φ passes with a simplex polish until
/// neither improves.
pub fn maximin(game: &Game, grid_a: &StrategyGrid) -> MaximinPoint {
    let replies = ClassicalReplies::new(grid_a);
    let nodes = grid_a.nodes();
    let guaranteed: Vec<f64> = nodes
        .par_iter()
        .map(|&a| replies.worst(game, &strategy_unitary(a)).1)
        .collect();
    let start = argmax_first(&guaranteed);

    let value = |theta: f64, phi: f64| {
        let a = StrategyParams::new(theta, phi).expect("bracket in range");
        replies.worst(game, &strategy_unitary(a)).1
    };

    let mut best = nodes[start];
    let mut m = guaranteed[start];
    for _ in 0..MAX_OUTER_SWEEPS {
        let before = m;
        (best, m) = golden_sweep(&value, grid_a, best, m);
        if !grid_a.is_classical_only() {
            // The optimum usually sits on a kink where two replies tie, which
            // axis-aligned line searches cannot follow.
            let ([theta, phi], v) = nelder_mead_max(
                |p| value(p[0], p[1]),
                [best.theta(), best.phi()],
                [grid_a.theta_spacing(), grid_a.phi_spacing()],
                [0.0, 0.0],
                [PI, FRAC_PI_2],
                0.1 * REFINE_TOL,
                SIMPLEX_ITERATIONS,
            );
            if v > m + TIE_TOL {
                best = StrategyParams::new(theta, phi).expect("simplex stays in range");
                m = v;
            }
        }
        if m <= before + TIE_TOL {
            break;
        }
    }

    let (worst_theta, m) = replies.worst(game, &strategy_unitary(best));
    MaximinPoint {
        gamma: game.gamma(),
        m,
        argmax_strategy: best,
        worst_reply: StrategyParams::classical(worst_theta).expect("reply in range"),
    }
}

/// One golden-section pass in θ, then one in φ, each one grid spacing either side.
fn golden_sweep(
    value: &impl Fn(f64, f64) -> f64,
    grid: &StrategyGrid,
    start: StrategyParams,
    m: f64,
) -> (StrategyParams, f64) {
    let phi = start.phi();
    let (lo, hi) = local_bracket(start.theta(), grid.theta_spacing(), 0.0, PI);
    let (theta, v) = maximize(|t| value(t, phi), lo, hi, (start.theta(), m), REFINE_TOL);
    let (mut phi_new, mut v_new) = (phi, v);
    if !grid.is_classical_only() {
        let (lo, hi) = local_bracket(phi, grid.phi_spacing(), 0.0, FRAC_PI_2);
        (phi_new, v_new) = maximize(|p| value(theta, p), lo, hi, (phi, v), REFINE_TOL);
    }
    (StrategyParams::new(theta, phi_new).expect("refined point in range"), v_new)
}

/// Entanglement level where Alice's maximin strategy leaves defection, by bisection.
pub fn threshold_gamma(table: &PayoffTable, grid: &StrategyGrid, tol: f64) -> Result<f64> {
    threshold_gamma_with(Orientation::default(), table, grid, tol)
}

pub fn threshold_gamma_with(
    orientation: Orientation,
    table: &PayoffTable,
    grid: &StrategyGrid,
    tol: f64,
) -> Result<f64> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::NotPositive("tol"));
    }
    let jumped = |gamma: f64| -> Result<bool> {
        let game = Game::with_orientation(gamma, *table, orientation)?;
        let point = maximin(&game, grid);
        Ok(point.argmax_strategy.distance(&StrategyParams::DEFECT) > THRESHOLD_JUMP)
    };

    let samples: Vec<(f64, bool)> = (0..BRACKET_SAMPLES)
        .map(|k| {
            let gamma = crate::grid::linspace_at(FRAC_PI_2, BRACKET_SAMPLES, k);
            jumped(gamma).map(|j| (gamma, j))
        })
        .collect::<Result<_>>()?;
    let first_jump = samples
        .iter()
        .position(|&(_, j)| j)
        .ok_or_else(|| Error::Bracket("maximin strategy never leaves defection on [0, π/2]".into()))?;
    if first_jump == 0 {
        return Err(Error::Bracket("maximin strategy is already away from defection at γ = 0".into()));
    }
    if let Some(&(g, _)) = samples[first_jump..].iter().find(|&&(_, j)| !j) {
        return Err(Error::Bracket(format!(
            "jump indicator is not monotone: back at defection for γ = {g}"
        )));
    }

    let (mut lo, mut hi) = (samples[first_jump - 1].0, samples[first_jump].0);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if jumped(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn game(gamma: f64) -> Game {
        Game::new(gamma, PayoffTable::STANDARD).unwrap()
    }

    #[test]
    fn separable_game_guarantees_punishment() {
        let grid = StrategyGrid::new(21, 11).unwrap();
        let p = maximin(&game(0.0), &grid);
        assert!((p.m - 1.0).abs() < 1e-9);
        assert_eq!(p.argmax_strategy, StrategyParams::DEFECT);
    }

    #[test]
    fn miracle_move_at_full_entanglement() {
        let grid = StrategyGrid::new(21, 11).unwrap();
        let p = maximin(&game(FRAC_PI_2), &grid);
        assert!((p.m - 3.0).abs() < 1e-9, "{p:?}");
        assert!(p.argmax_strategy.distance(&StrategyParams::MIRACLE) < 1e-3);
    }

    #[test]
    fn rejects_non_positive_tolerance() {
        let grid = StrategyGrid::new(5, 3).unwrap();
        assert!(threshold_gamma(&PayoffTable::STANDARD, &grid, 0.0).is_err());
    }
}
