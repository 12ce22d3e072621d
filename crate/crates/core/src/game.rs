//! Payoff semantics for the quantum Prisoners' Dilemma.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{check_range, Error, Result};
use crate::quantum::{
    outcome_distribution, strategy_unitary, Board, GameState, Orientation, StrategyParams,
    Unitary2, CC, CD, DC, DD,
};

/// Reward, punishment, temptation and sucker's payoff.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PayoffTable {
    r: f64,
    p: f64,
    t: f64,
    s: f64,
}

impl PayoffTable {
    /// `(r, p, t, s) = (3, 1, 5, 0)`.
    pub const STANDARD: Self = Self {
        r: 3.0,
        p: 1.0,
        t: 5.0,
        s: 0.0,
    };

    /// Requires the dilemma ordering `t > r > p > s`.
    pub fn new(r: f64, p: f64, t: f64, s: f64) -> Result<Self> {
        for (name, v) in [("r", r), ("p", p), ("t", t), ("s", s)] {
            if !v.is_finite() {
                return Err(Error::NonFinite(name));
            }
        }
        if !(t > r && r > p && p > s) {
            return Err(Error::PayoffOrdering { r, p, t, s });
        }
        Ok(Self { r, p, t, s })
    }

    pub fn reward(&self) -> f64 {
        self.r
    }

    pub fn punishment(&self) -> f64 {
        self.p
    }

    pub fn temptation(&self) -> f64 {
        self.t
    }

    pub fn sucker(&self) -> f64 {
        self.s
    }
}

impl Default for PayoffTable {
    fn default() -> Self {
        Self::STANDARD
    }
}

/// Joint detection probabilities `P_CC, P_CD, P_DC, P_DD`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OutcomeDistribution {
    pub p_cc: f64,
    pub p_cd: f64,
    pub p_dc: f64,
    pub p_dd: f64,
}

impl OutcomeDistribution {
    pub fn new(p_cc: f64, p_cd: f64, p_dc: f64, p_dd: f64) -> Result<Self> {
        for (name, v) in [("p_cc", p_cc), ("p_cd", p_cd), ("p_dc", p_dc), ("p_dd", p_dd)] {
            check_range(name, v, 0.0, 1.0)?;
        }
        let sum = p_cc + p_cd + p_dc + p_dd;
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::OutOfRange {
                name: "probability sum",
                value: sum,
                lo: 1.0,
                hi: 1.0,
            });
        }
        Ok(Self { p_cc, p_cd, p_dc, p_dd })
    }

    pub(crate) fn from_raw(p: [f64; 4]) -> Self {
        Self {
            p_cc: p[CC],
            p_cd: p[CD],
            p_dc: p[DC],
            p_dd: p[DD],
        }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.p_cc, self.p_cd, self.p_dc, self.p_dd]
    }

    pub fn total(&self) -> f64 {
        self.as_array().iter().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PayoffPair {
    pub alice: f64,
    pub bob: f64,
}

impl PayoffPair {
    pub fn swapped(self) -> Self {
        Self {
            alice: self.bob,
            bob: self.alice,
        }
    }
}

/// Everything produced by one play of the game, with the inputs echoed back.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GameResult {
    pub gamma: f64,
    pub strategy_a: StrategyParams,
    pub strategy_b: StrategyParams,
    pub final_state: GameState,
    pub distribution: OutcomeDistribution,
    pub payoffs: PayoffPair,
}

/// `$_A = r P_CC + p P_DD + t P_DC + s P_CD`; Bob's payoff swaps `t` and `s`.
pub fn expected_payoffs(dist: &OutcomeDistribution, table: &PayoffTable) -> PayoffPair {
    let base = table.r * dist.p_cc + table.p * dist.p_dd;
    PayoffPair {
        alice: base + table.t * dist.p_dc + table.s * dist.p_cd,
        bob: base + table.s * dist.p_dc + table.t * dist.p_cd,
    }
}

/// Plays one game with the default board orientation.
pub fn play(
    gamma: f64,
    a: StrategyParams,
    b: StrategyParams,
    table: &PayoffTable,
) -> Result<GameResult> {
    Ok(Game::new(gamma, *table)?.play(a, b))
}

/// Payoffs when each player cooperates independently with the given probability.
pub fn classical_mixed_oracle(pa: f64, pb: f64, table: &PayoffTable) -> Result<PayoffPair> {
    let pa = check_range("pa", pa, 0.0, 1.0)?;
    let pb = check_range("pb", pb, 0.0, 1.0)?;
    let dist = OutcomeDistribution {
        p_cc: pa * pb,
        p_cd: pa * (1.0 - pb),
        p_dc: (1.0 - pa) * pb,
        p_dd: (1.0 - pa) * (1.0 - pb),
    };
    Ok(expected_payoffs(&dist, table))
}

/// One-parameter path through the strategy space: `t ∈ [0, 1]` runs from
/// cooperation to defection along `U(tπ, 0)`, `t ∈ [−1, 0)` runs towards
/// `U(0, π/2)` along `U(0, −tπ/2)`.
pub fn figure_path_strategy(t: f64) -> Result<StrategyParams> {
    let t = check_range("t", t, -1.0, 1.0)?;
    if t >= 0.0 {
        StrategyParams::new(t * PI, 0.0)
    } else {
        StrategyParams::new(0.0, -t * FRAC_PI_2)
    }
}

/// A board at fixed entanglement together with a payoff table.
#[derive(Debug, Clone, Copy)]
pub struct Game {
    board: Board,
    table: PayoffTable,
}

impl Game {
    pub fn new(gamma: f64, table: PayoffTable) -> Result<Self> {
        Self::with_orientation(gamma, table, Orientation::default())
    }

    pub fn with_orientation(gamma: f64, table: PayoffTable, orientation: Orientation) -> Result<Self> {
        Ok(Self {
            board: Board::new(gamma, orientation)?,
            table,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.board.gamma()
    }

    pub fn table(&self) -> &PayoffTable {
        &self.table
    }

    pub fn board(&self) -> &Board {
        &self.board
    }

    pub fn play(&self, a: StrategyParams, b: StrategyParams) -> GameResult {
        let final_state = self.board.evolve(a, b);
        let distribution = outcome_distribution(&final_state);
        GameResult {
            gamma: self.board.gamma(),
            strategy_a: a,
            strategy_b: b,
            final_state,
            distribution,
            payoffs: expected_payoffs(&distribution, &self.table),
        }
    }

    pub fn distribution_of(&self, a: &Unitary2, b: &Unitary2) -> OutcomeDistribution {
        outcome_distribution(&self.board.final_state(a, b))
    }

    pub fn payoffs_of(&self, a: &Unitary2, b: &Unitary2) -> PayoffPair {
        expected_payoffs(&self.distribution_of(a, b), &self.table)
    }

    pub fn payoffs(&self, a: StrategyParams, b: StrategyParams) -> PayoffPair {
        self.payoffs_of(&strategy_unitary(a), &strategy_unitary(b))
    }

    /// Alice's payoff only.
    pub fn alice_payoff(&self, a: StrategyParams, b: StrategyParams) -> f64 {
        self.payoffs(a, b).alice
    }
}
