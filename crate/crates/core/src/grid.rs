use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantum::StrategyParams;

/// Uniform grid over the strategy space `[0, π] × [0, π/2]`, endpoints included.
///
/// With `classical_only` the φ axis collapses to the single value 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyGrid {
    theta_steps: usize,
    phi_steps: usize,
    classical_only: bool,
}

impl Default for StrategyGrid {
    fn default() -> Self {
        Self {
            theta_steps: 101,
            phi_steps: 51,
            classical_only: false,
        }
    }
}

impl StrategyGrid {
    pub fn new(theta_steps: usize, phi_steps: usize) -> Result<Self> {
        if theta_steps < 2 {
            return Err(Error::TooFewSteps { name: "theta grid", steps: theta_steps });
        }
        if phi_steps < 2 {
            return Err(Error::TooFewSteps { name: "phi grid", steps: phi_steps });
        }
        Ok(Self {
            theta_steps,
            phi_steps,
            classical_only: false,
        })
    }

    pub fn classical(theta_steps: usize) -> Result<Self> {
        if theta_steps < 2 {
            return Err(Error::TooFewSteps { name: "theta grid", steps: theta_steps });
        }
        Ok(Self {
            theta_steps,
            phi_steps: 1,
            classical_only: true,
        })
    }

    /// Same extent with twice the resolution along each live axis.
    pub fn refined(&self) -> Self {
        Self {
            theta_steps: 2 * self.theta_steps - 1,
            phi_steps: if self.classical_only { 1 } else { 2 * self.phi_steps - 1 },
            classical_only: self.classical_only,
        }
    }

    pub fn theta_steps(&self) -> usize {
        self.theta_steps
    }

    pub fn phi_steps(&self) -> usize {
        self.phi_steps
    }

    pub fn is_classical_only(&self) -> bool {
        self.classical_only
    }

    pub fn len(&self) -> usize {
        self.theta_steps * self.phi_steps
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn theta_spacing(&self) -> f64 {
        PI / (self.theta_steps - 1) as f64
    }

    pub fn phi_spacing(&self) -> f64 {
        if self.classical_only {
            0.0
        } else {
            FRAC_PI_2 / (self.phi_steps - 1) as f64
        }
    }

    pub fn theta_at(&self, i: usize) -> f64 {
        linspace_at(PI, self.theta_steps, i)
    }

    pub fn phi_at(&self, k: usize) -> f64 {
        if self.classical_only {
            0.0
        } else {
            linspace_at(FRAC_PI_2, self.phi_steps, k)
        }
    }

    /// Node `index` in θ-major order, so node order is lexicographic in `(θ, φ)`.
    pub fn node(&self, index: usize) -> StrategyParams {
        let (i, k) = self.coords(index);
        StrategyParams::new(self.theta_at(i), self.phi_at(k)).expect("grid node in range")
    }

    pub fn coords(&self, index: usize) -> (usize, usize) {
        (index / self.phi_steps, index % self.phi_steps)
    }

    pub fn nodes(&self) -> Vec<StrategyParams> {
        (0..self.len()).map(|n| self.node(n)).collect()
    }

    /// Bob's classical replies `U(θ, 0)` on the θ axis of this grid.
    pub fn classical_nodes(&self) -> Vec<StrategyParams> {
        (0..self.theta_steps)
            .map(|i| StrategyParams::classical(self.theta_at(i)).expect("grid node in range"))
            .collect()
    }
}

/// `i`-th of `steps` evenly spaced points on `[0, hi]`, with exact endpoints.
pub(crate) fn linspace_at(hi: f64, steps: usize, i: usize) -> f64 {
    if i + 1 >= steps {
        hi
    } else {
        hi * i as f64 / (steps - 1) as f64
    }
}
