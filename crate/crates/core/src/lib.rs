//! Two-player quantum games in the entangle / play / disentangle / measure
//! protocol, specialised to the Prisoners' Dilemma.
//!
//! Each player applies a local unitary `U(θ, φ)` to one qubit of an entangled
//! pair. The pair is disentangled and measured in the `{C, D}` basis, and the
//! expected payoffs follow from the four detection probabilities. The
//! [`analysis`] module searches the strategy space for best replies, Nash
//! equilibria, Pareto optimality and the maximin payoff Alice can guarantee
//! against a classical opponent.

pub mod analysis;
pub mod error;
pub mod game;
pub mod grid;
pub mod quantum;
pub mod search;

pub use error::{Error, Result};
pub use game::{
    classical_mixed_oracle, expected_payoffs, figure_path_strategy, play, Game, GameResult,
    OutcomeDistribution, PayoffPair, PayoffTable,
};
pub use grid::StrategyGrid;
pub use quantum::{
    entangling_gate, evolve, evolve_with, outcome_distribution, schmidt_weights, strategy_unitary,
    tensor_product, Board, ComplexScalar, GameState, Orientation, StrategyParams, Unitary2, Unitary4,
};
