use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::game::{Game, PayoffTable};
use crate::grid::StrategyGrid;
use crate::quantum::{
    defect_defect, entangling_gate, evolve, outcome_distribution, strategy_unitary, tensor_product,
    StrategyParams, Unitary2,
};

/// Residuals of the classical correspondence conditions at one entanglement level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrespondenceReport {
    pub gamma: f64,
    /// `‖[J, D⊗D]‖_max`
    pub commutator_dd: f64,
    /// `‖[J, D⊗C]‖_max`
    pub commutator_dc: f64,
    /// `‖[J, C⊗D]‖_max`
    pub commutator_cd: f64,
    /// `max |P_σσ′ − p_A^(σ) p_B^(σ′)|` over classical strategy pairs.
    pub factorization_deviation: f64,
}

impl CorrespondenceReport {
    pub fn max_commutator(&self) -> f64 {
        self.commutator_dd.max(self.commutator_dc).max(self.commutator_cd)
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.max_commutator() <= tol && self.factorization_deviation <= tol
    }
}

const FACTORIZATION_STEPS: usize = 33;

pub fn verify_correspondence(gamma: f64) -> Result<CorrespondenceReport> {
    let j = entangling_gate(gamma)?;
    let d = strategy_unitary(StrategyParams::DEFECT);
    let c = Unitary2::IDENTITY;

    let thetas = StrategyGrid::classical(FACTORIZATION_STEPS)?.classical_nodes();
    let mut deviation: f64 = 0.0;
    for &a in &thetas {
        for &b in &thetas {
            let dist = outcome_distribution(&evolve(gamma, a, b)?).as_array();
            let (pa, pb) = (a.cooperation_probability(), b.cooperation_probability());
            let product = [pa * pb, pa * (1.0 - pb), (1.0 - pa) * pb, (1.0 - pa) * (1.0 - pb)];
            for (x, y) in dist.iter().zip(product) {
                deviation = deviation.max((x - y).abs());
            }
        }
    }

    Ok(CorrespondenceReport {
        gamma,
        commutator_dd: j.commutator_norm(&defect_defect()),
        commutator_dc: j.commutator_norm(&tensor_product(&d, &c)),
        commutator_cd: j.commutator_norm(&tensor_product(&c, &d)),
        factorization_deviation: deviation,
    })
}

/// Comparison of Alice's payoff against `U(0, π/2)` at full entanglement with
/// `cos²(θ/2)(3 sin²φ + cos²φ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub max_deviation: f64,
    pub max_payoff: f64,
}

impl BoundCheck {
    /// No deviation from the quantum move can beat the reward.
    pub fn within_bound(&self) -> bool {
        self.max_payoff <= 3.0 + 1e-12
    }
}

pub fn analytic_nash_bound_check(grid: &StrategyGrid) -> BoundCheck {
    let game = Game::new(FRAC_PI_2, PayoffTable::STANDARD).expect("valid gamma");
    let mut out = BoundCheck {
        max_deviation: 0.0,
        max_payoff: f64::NEG_INFINITY,
    };
    for node in grid.nodes() {
        let computed = game.alice_payoff(node, StrategyParams::QUANTUM);
        let (sp, cp) = node.phi().sin_cos();
        let closed = (node.theta() / 2.0).cos().powi(2) * (3.0 * sp * sp + cp * cp);
        out.max_deviation = out.max_deviation.max((computed - closed).abs());
        out.max_payoff = out.max_payoff.max(computed);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivially_holds_without_entanglement() {
        let r = verify_correspondence(0.0).unwrap();
        assert!(r.holds(1e-12), "{r:?}");
    }

    #[test]
    fn holds_at_full_entanglement() {
        let r = verify_correspondence(FRAC_PI_2).unwrap();
        assert!(r.max_commutator() <= 1e-12);
        assert!(r.factorization_deviation <= 1e-10);
    }

    #[test]
    fn closed_form_corners() {
        let game = Game::new(FRAC_PI_2, PayoffTable::STANDARD).unwrap();
        let q = StrategyParams::QUANTUM;
        assert!((game.alice_payoff(q, q) - 3.0).abs() < 1e-12);
        assert!(game.alice_payoff(StrategyParams::DEFECT, q).abs() < 1e-12);
        assert!((game.alice_payoff(StrategyParams::COOPERATE, q) - 1.0).abs() < 1e-12);
        let check = analytic_nash_bound_check(&StrategyGrid::new(11, 6).unwrap());
        assert!(check.max_deviation < 1e-12 && check.within_bound());
    }
}
