use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{argmax_first, PreparedGrid, REFINE_TOL};
use crate::game::Game;
use crate::grid::StrategyGrid;
use crate::quantum::{strategy_unitary, StrategyParams};
use crate::search::{local_bracket, maximize};

/// A strategy must come within this of the best reply to every opponent to count as dominant.
pub const DOMINANCE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Response {
    pub strategy: StrategyParams,
    pub payoff: f64,
}

/// Best reply for the responder (as Alice) against a fixed `opponent`.
///
/// Grid argmax followed by one golden-section pass in θ and then in φ, each
/// over one grid spacing either side of the current point.
pub fn best_response(game: &Game, opponent: StrategyParams, grid: &StrategyGrid) -> Response {
    let opp = strategy_unitary(opponent);
    let prepared = PreparedGrid::new(*grid);
    let values: Vec<f64> = prepared
        .unitaries
        .par_iter()
        .map(|u| game.payoffs_of(u, &opp).alice)
        .collect();
    let start = argmax_first(&values);
    refine_response(game, opponent, grid, prepared.nodes[start], values[start])
}

/// Local coordinate refinement of a reply, keeping the incumbent unless beaten.
pub(crate) fn refine_response(
    game: &Game,
    opponent: StrategyParams,
    grid: &StrategyGrid,
    start: StrategyParams,
    start_payoff: f64,
) -> Response {
    let opp = strategy_unitary(opponent);
    let payoff = |theta: f64, phi: f64| {
        let s = StrategyParams::new(theta, phi).expect("bracket inside strategy space");
        game.payoffs_of(&strategy_unitary(s), &opp).alice
    };

    let phi = start.phi();
    let (lo, hi) = local_bracket(start.theta(), grid.theta_spacing(), 0.0, PI);
    let (theta, mut value) = maximize(|t| payoff(t, phi), lo, hi, (start.theta(), start_payoff), REFINE_TOL);

    let mut phi_best = phi;
    if !grid.is_classical_only() {
        let (lo, hi) = local_bracket(phi, grid.phi_spacing(), 0.0, FRAC_PI_2);
        let (p, v) = maximize(|p| payoff(theta, p), lo, hi, (phi, value), REFINE_TOL);
        phi_best = p;
        value = v;
    }
    Response {
        strategy: StrategyParams::new(theta, phi_best).expect("refined point in range"),
        payoff: value,
    }
}

/// A grid strategy that is a best reply (within [`DOMINANCE_TOL`]) to every
/// opponent grid strategy, smallest `(θ, φ)` first.
pub fn dominant_strategy(game: &Game, grid: &StrategyGrid) -> Option<StrategyParams> {
    let prepared = PreparedGrid::new(*grid);
    let mut candidates: Vec<usize> = (0..prepared.len()).collect();
    for opp in &prepared.unitaries {
        let column: Vec<f64> = prepared
            .unitaries
            .par_iter()
            .map(|u| game.payoffs_of(u, opp).alice)
            .collect();
        let best = column.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        candidates.retain(|&i| column[i] >= best - DOMINANCE_TOL);
        if candidates.is_empty() {
            return None;
        }
    }
    candidates.first().map(|&i| prepared.nodes[i])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::PayoffTable;

    fn game(gamma: f64) -> Game {
        Game::new(gamma, PayoffTable::STANDARD).unwrap()
    }

    #[test]
    fn quantum_move_answers_defection_when_entangled() {
        let r = best_response(&game(FRAC_PI_2), StrategyParams::DEFECT, &StrategyGrid::default());
        assert!(r.strategy.distance(&StrategyParams::QUANTUM) < 1e-4, "{:?}", r);
        assert!((r.payoff - 5.0).abs() < 1e-9);
    }

    #[test]
    fn defection_answers_cooperation_when_entangled() {
        let r = best_response(&game(FRAC_PI_2), StrategyParams::COOPERATE, &StrategyGrid::default());
        assert!((r.strategy.theta() - PI).abs() < 1e-4, "{:?}", r);
        assert!((r.payoff - 5.0).abs() < 1e-9);
    }

    #[test]
    fn classical_grid_best_reply() {
        let grid = StrategyGrid::classical(21).unwrap();
        let r = best_response(&game(0.0), StrategyParams::COOPERATE, &grid);
        assert_eq!(r.strategy, StrategyParams::DEFECT);
    }

    #[test]
    fn no_dominant_strategy_when_entangled() {
        let grid = StrategyGrid::new(21, 11).unwrap();
        assert_eq!(dominant_strategy(&game(FRAC_PI_2), &grid), None);
        assert_eq!(dominant_strategy(&game(0.0), &grid), Some(StrategyParams::DEFECT));
    }
}
