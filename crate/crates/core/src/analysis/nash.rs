use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::response::refine_response;
use super::{best_response, PreparedGrid};
use crate::game::{Game, PayoffPair};
use crate::grid::StrategyGrid;
use crate::quantum::StrategyParams;

/// Strictness margin for Pareto comparisons.
pub const PARETO_MARGIN: f64 = 1e-9;

/// Qualifying grid pairs within this many steps on every axis share a cluster.
const CLUSTER_RADIUS: isize = 2;

const MAX_REFINE_ROUNDS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumReport {
    pub alice: StrategyParams,
    pub bob: StrategyParams,
    pub payoffs: PayoffPair,
    pub is_nash: bool,
    /// Largest unilateral gain either player can find.
    pub nash_slack: f64,
    pub is_pareto: bool,
}

/// Largest gain available to either player by deviating alone, searched on `grid`.
pub fn nash_slack(game: &Game, pair: (StrategyParams, StrategyParams), grid: &StrategyGrid) -> f64 {
    let (a, b) = pair;
    let here = game.payoffs(a, b);
    let alice_gain = best_response(game, b, grid).payoff - here.alice;
    // Bob's payoff against Alice equals Alice's payoff with roles swapped.
    let bob_gain = best_response(game, a, grid).payoff - here.bob;
    alice_gain.max(bob_gain).max(0.0)
}

/// ε-Nash equilibria on the grid, one report per cluster of adjacent qualifying pairs.
///
/// A pair `(a, b)` qualifies when neither player gains more than `epsilon` by
/// moving to any other grid node. Each cluster is represented by its member with
/// the largest payoff sum, refined off the grid by alternating local
/// golden-section replies; the report's slack is then measured against full
/// best responses.
pub fn find_nash(game: &Game, grid: &StrategyGrid, epsilon: f64) -> Vec<EquilibriumReport> {
    let prepared = PreparedGrid::new(*grid);
    let n = prepared.len();
    let alice = |i: usize, j: usize| game.payoffs_of(&prepared.unitaries[i], &prepared.unitaries[j]).alice;

    // best[j]: Alice's best grid payoff against Bob playing node j.
    let best: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|j| (0..n).map(|i| alice(i, j)).fold(f64::NEG_INFINITY, f64::max))
        .collect();

    // The game is symmetric, so (i, j) qualifies exactly when (j, i) does.
    let upper: Vec<Vec<(usize, usize, f64)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (i..n)
                .filter_map(|j| {
                    let a_ij = alice(i, j);
                    if a_ij < best[j] - epsilon {
                        return None;
                    }
                    let a_ji = alice(j, i);
                    (a_ji >= best[i] - epsilon).then_some((j, a_ij, a_ji))
                })
                .map(|(j, a_ij, a_ji)| (i, j, a_ij + a_ji))
                .collect()
        })
        .collect();

    let mut pairs: Vec<(usize, usize, f64)> = Vec::new();
    for &(i, j, sum) in upper.iter().flatten() {
        pairs.push((i, j, sum));
        if i != j {
            pairs.push((j, i, sum));
        }
    }
    pairs.sort_by_key(|&(i, j, _)| (i, j));

    let clusters = cluster_pairs(grid, &pairs);
    clusters
        .into_iter()
        .map(|members| {
            let &(i, j, _) = members
                .iter()
                .map(|&m| &pairs[m])
                .fold(None, |acc: Option<&(usize, usize, f64)>, p| match acc {
                    Some(q) if q.2 >= p.2 - crate::search::TIE_TOL => Some(q),
                    _ => Some(p),
                })
                .expect("clusters are non-empty");
            let (a, b) = refine_pair(game, grid, prepared.nodes[i], prepared.nodes[j]);
            let slack = nash_slack(game, (a, b), grid);
            EquilibriumReport {
                alice: a,
                bob: b,
                payoffs: game.payoffs(a, b),
                is_nash: slack <= epsilon,
                nash_slack: slack,
                is_pareto: is_pareto_optimal(game, (a, b), grid),
            }
        })
        .collect()
}

/// Alternates local refined replies until neither player moves.
fn refine_pair(
    game: &Game,
    grid: &StrategyGrid,
    mut a: StrategyParams,
    mut b: StrategyParams,
) -> (StrategyParams, StrategyParams) {
    for _ in 0..MAX_REFINE_ROUNDS {
        let here = game.payoffs(a, b);
        let ra = refine_response(game, b, grid, a, here.alice);
        let bob_here = game.payoffs(b, ra.strategy).alice;
        let rb = refine_response(game, ra.strategy, grid, b, bob_here);
        let moved = ra.strategy != a || rb.strategy != b;
        a = ra.strategy;
        b = rb.strategy;
        if !moved {
            break;
        }
    }
    (a, b)
}

/// Groups sorted pair indices into clusters; clusters are ordered by their first member.
fn cluster_pairs(grid: &StrategyGrid, pairs: &[(usize, usize, f64)]) -> Vec<Vec<usize>> {
    let coords = |&(i, j, _): &(usize, usize, f64)| {
        let (ti, pi) = grid.coords(i);
        let (tj, pj) = grid.coords(j);
        [ti as isize, pi as isize, tj as isize, pj as isize]
    };
    let index: HashMap<[isize; 4], usize> =
        pairs.iter().enumerate().map(|(k, p)| (coords(p), k)).collect();

    let mut parent: Vec<usize> = (0..pairs.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }

    let span = -CLUSTER_RADIUS..=CLUSTER_RADIUS;
    for (k, p) in pairs.iter().enumerate() {
        let c = coords(p);
        for d0 in span.clone() {
            for d1 in span.clone() {
                for d2 in span.clone() {
                    for d3 in span.clone() {
                        let key = [c[0] + d0, c[1] + d1, c[2] + d2, c[3] + d3];
                        if let Some(&other) = index.get(&key) {
                            let (ra, rb) = (find(&mut parent, k), find(&mut parent, other));
                            if ra != rb {
                                parent[ra.max(rb)] = ra.min(rb);
                            }
                        }
                    }
                }
            }
        }
    }

    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for k in 0..pairs.len() {
        let root = find(&mut parent, k);
        let g = *slot.entry(root).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(k);
    }
    groups
}

/// True when no grid pair raises one payoff by more than [`PARETO_MARGIN`]
/// without lowering the other by more than the same margin.
pub fn is_pareto_optimal(game: &Game, pair: (StrategyParams, StrategyParams), grid: &StrategyGrid) -> bool {
    let target = game.payoffs(pair.0, pair.1);
    let prepared = PreparedGrid::new(*grid);
    let n = prepared.len();
    let dominates = |x: f64, y: f64| {
        x >= target.alice - PARETO_MARGIN
            && y >= target.bob - PARETO_MARGIN
            && (x > target.alice + PARETO_MARGIN || y > target.bob + PARETO_MARGIN)
    };
    let dominated = (0..n).into_par_iter().any(|i| {
        (i..n).any(|j| {
            let p = game.payoffs_of(&prepared.unitaries[i], &prepared.unitaries[j]);
            dominates(p.alice, p.bob) || dominates(p.bob, p.alice)
        })
    });
    !dominated
}
