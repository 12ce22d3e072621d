//! Game-theoretic analysis over the strategy space.
//!
//! Grid evaluations run on the rayon pool. Every reduction walks results in
//! node order and resolves near-equal values towards the lexicographically
//! smallest `(θ, φ)`, so outputs do not depend on the number of workers.

mod checks;
mod maximin;
mod nash;
mod response;

pub use checks::{analytic_nash_bound_check, verify_correspondence, BoundCheck, CorrespondenceReport};
pub use maximin::{maximin, threshold_gamma, threshold_gamma_with, MaximinPoint, THRESHOLD_JUMP};
pub use nash::{find_nash, is_pareto_optimal, nash_slack, EquilibriumReport, PARETO_MARGIN};
pub use response::{best_response, dominant_strategy, Response, DOMINANCE_TOL};

/// Angular tolerance for golden-section refinement, in radians.
pub const REFINE_TOL: f64 = 1e-6;

use crate::grid::StrategyGrid;
use crate::quantum::{strategy_unitary, StrategyParams, Unitary2};
use crate::search::TIE_TOL;

/// Grid nodes with their unitaries, in node (lexicographic) order.
pub(crate) struct PreparedGrid {
    pub nodes: Vec<StrategyParams>,
    pub unitaries: Vec<Unitary2>,
}

impl PreparedGrid {
    pub fn new(grid: StrategyGrid) -> Self {
        let nodes = grid.nodes();
        let unitaries = nodes.iter().map(|&n| strategy_unitary(n)).collect();
        Self { nodes, unitaries }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }
}

/// Index of the first value within [`TIE_TOL`] of the maximum.
pub(crate) fn argmax_first(values: &[f64]) -> usize {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    values
        .iter()
        .position(|&v| v >= max - TIE_TOL)
        .expect("non-empty slice")
}

/// Index of the first value within [`TIE_TOL`] of the minimum.
pub(crate) fn argmin_first(values: &[f64]) -> usize {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    values
        .iter()
        .position(|&v| v <= min + TIE_TOL)
        .expect("non-empty slice")
}
