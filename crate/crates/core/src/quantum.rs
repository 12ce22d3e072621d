//! Two-qubit game board: strategy unitaries, the entangling gate, state
//! evolution and measurement probabilities.
//!
//! Basis states are indexed `0 = |CC⟩, 1 = |CD⟩, 2 = |DC⟩, 3 = |DD⟩`, with
//! Alice's qubit first. Single-qubit matrices act on `(|C⟩, |D⟩)`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_range, Error, Result};
use crate::game::OutcomeDistribution;

pub type ComplexScalar = Complex64;

/// Tolerance for unitarity and normalization checks.
pub const UNITARY_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

pub const CC: usize = 0;
pub const CD: usize = 1;
pub const DC: usize = 2;
pub const DD: usize = 3;

/// A point `(θ, φ)` of the strategic space, `θ ∈ [0, π]`, `φ ∈ [0, π/2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrategyParams {
    theta: f64,
    phi: f64,
}

impl StrategyParams {
    /// Cooperate, `U(0, 0)`.
    pub const COOPERATE: Self = Self { theta: 0.0, phi: 0.0 };
    /// Defect, `U(π, 0)`.
    pub const DEFECT: Self = Self { theta: PI, phi: 0.0 };
    /// `U(0, π/2) = diag(i, -i)`.
    pub const QUANTUM: Self = Self { theta: 0.0, phi: FRAC_PI_2 };
    /// The miracle move `U(π/2, π/2)`.
    pub const MIRACLE: Self = Self { theta: FRAC_PI_2, phi: FRAC_PI_2 };

    /// Rejects angles outside the strategic space. Values within 1e-9 of a
    /// bound are snapped onto it, so printed angles can be fed back in.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        Ok(Self {
            theta: check_range("theta", theta, 0.0, PI)?,
            phi: check_range("phi", phi, 0.0, FRAC_PI_2)?,
        })
    }

    /// A classical (biased-coin) strategy `U(θ, 0)`.
    pub fn classical(theta: f64) -> Result<Self> {
        Self::new(theta, 0.0)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Euclidean distance in the `(θ, φ)` plane.
    pub fn distance(&self, other: &Self) -> f64 {
        (self.theta - other.theta).hypot(self.phi - other.phi)
    }

    /// Probability that this strategy yields `C` when applied alone to `|C⟩`.
    pub fn cooperation_probability(&self) -> f64 {
        (self.theta / 2.0).cos().powi(2)
    }

    /// Lexicographic order on `(θ, φ)`, the tie-break order used by all searches.
    pub fn lex_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.theta
            .total_cmp(&other.theta)
            .then(self.phi.total_cmp(&other.phi))
    }
}

impl fmt::Display for StrategyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U(θ={}, φ={})", self.theta, self.phi)
    }
}

/// A 2×2 unitary acting on one player's qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2([[Complex64; 2]; 2]);

impl Unitary2 {
    pub const IDENTITY: Self = Self([[ONE, ZERO], [ZERO, ONE]]);

    /// Validates finiteness and `U†U = I` to [`UNITARY_TOL`].
    pub fn new(m: [[Complex64; 2]; 2]) -> Result<Self> {
        if m.iter().flatten().any(|z| !z.is_finite()) {
            return Err(Error::NonFinite("unitary entry"));
        }
        let u = Self(m);
        if u.unitarity_defect() > UNITARY_TOL {
            return Err(Error::OutOfRange {
                name: "unitarity defect",
                value: u.unitarity_defect(),
                lo: 0.0,
                hi: UNITARY_TOL,
            });
        }
        Ok(u)
    }

    pub fn entries(&self) -> &[[Complex64; 2]; 2] {
        &self.0
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Self([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    /// `max |(U†U − I)_ij|`.
    pub fn unitarity_defect(&self) -> f64 {
        let p = self.adjoint() * *self;
        max_deviation_from_identity(p.0.iter().map(|r| r.as_slice()))
    }

    /// `self · ket` for a single-qubit amplitude pair.
    pub fn apply(&self, ket: [Complex64; 2]) -> [Complex64; 2] {
        let m = &self.0;
        [
            m[0][0] * ket[0] + m[0][1] * ket[1],
            m[1][0] * ket[0] + m[1][1] * ket[1],
        ]
    }
}

impl Mul for Unitary2 {
    type Output = Unitary2;

    fn mul(self, rhs: Unitary2) -> Unitary2 {
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.0[i][0] * rhs.0[0][j] + self.0[i][1] * rhs.0[1][j];
            }
        }
        Unitary2(out)
    }
}

/// A 4×4 unitary on the joint board.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary4([[Complex64; 4]; 4]);

impl Unitary4 {
    pub const IDENTITY: Self = Self([
        [ONE, ZERO, ZERO, ZERO],
        [ZERO, ONE, ZERO, ZERO],
        [ZERO, ZERO, ONE, ZERO],
        [ZERO, ZERO, ZERO, ONE],
    ]);

    pub fn new(m: [[Complex64; 4]; 4]) -> Result<Self> {
        if m.iter().flatten().any(|z| !z.is_finite()) {
            return Err(Error::NonFinite("unitary entry"));
        }
        let u = Self(m);
        let defect = u.unitarity_defect();
        if defect > UNITARY_TOL {
            return Err(Error::OutOfRange {
                name: "unitarity defect",
                value: defect,
                lo: 0.0,
                hi: UNITARY_TOL,
            });
        }
        Ok(u)
    }

    pub fn entries(&self) -> &[[Complex64; 4]; 4] {
        &self.0
    }

    pub fn adjoint(&self) -> Self {
        let mut out = [[ZERO; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.0[j][i].conj();
            }
        }
        Self(out)
    }

    pub fn unitarity_defect(&self) -> f64 {
        let p = self.adjoint() * *self;
        max_deviation_from_identity(p.0.iter().map(|r| r.as_slice()))
    }

    /// `max |(AB − BA)_ij|`.
    pub fn commutator_norm(&self, other: &Self) -> f64 {
        let ab = *self * *other;
        let ba = *other * *self;
        ab.0.iter()
            .flatten()
            .zip(ba.0.iter().flatten())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    /// Applies the gate to a state. Unitarity preserves normalization.
    pub fn apply(&self, state: &GameState) -> GameState {
        GameState(self.apply_raw(&state.0))
    }

    fn apply_raw(&self, v: &[Complex64; 4]) -> [Complex64; 4] {
        let mut out = [ZERO; 4];
        for (o, row) in out.iter_mut().zip(self.0.iter()) {
            *o = row.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
        }
        out
    }
}

impl Mul for Unitary4 {
    type Output = Unitary4;

    fn mul(self, rhs: Unitary4) -> Unitary4 {
        let mut out = [[ZERO; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..4).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        Unitary4(out)
    }
}

fn max_deviation_from_identity<'a>(rows: impl Iterator<Item = &'a [Complex64]>) -> f64 {
    rows.enumerate()
        .flat_map(|(i, row)| {
            row.iter().enumerate().map(move |(j, z)| {
                let target = if i == j { ONE } else { ZERO };
                (z - target).norm()
            })
        })
        .fold(0.0, f64::max)
}

/// Normalized amplitudes over `|CC⟩, |CD⟩, |DC⟩, |DD⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GameState([Complex64; 4]);

impl GameState {
    pub fn basis(index: usize) -> Self {
        let mut amp = [ZERO; 4];
        amp[index] = ONE;
        Self(amp)
    }

    pub fn new(amp: [Complex64; 4]) -> Result<Self> {
        if amp.iter().any(|z| !z.is_finite()) {
            return Err(Error::NonFinite("amplitude"));
        }
        let norm: f64 = amp.iter().map(|z| z.norm_sqr()).sum();
        if (norm - 1.0).abs() > UNITARY_TOL {
            return Err(Error::OutOfRange {
                name: "state norm",
                value: norm,
                lo: 1.0,
                hi: 1.0,
            });
        }
        Ok(Self(amp))
    }

    pub fn amplitudes(&self) -> &[Complex64; 4] {
        &self.0
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a.conj() * b).sum()
    }

    /// Equality up to a global phase: `|⟨a|b⟩| ≥ 1 − tol`.
    pub fn same_ray(&self, other: &Self, tol: f64) -> bool {
        self.inner(other).norm() >= 1.0 - tol
    }
}

/// `U(θ, φ) = [[e^{iφ}cos(θ/2), sin(θ/2)], [−sin(θ/2), e^{−iφ}cos(θ/2)]]`.
pub fn strategy_unitary(params: StrategyParams) -> Unitary2 {
    let (s, c) = (params.theta / 2.0).sin_cos();
    let phase = Complex64::from_polar(1.0, params.phi);
    Unitary2([
        [phase * c, Complex64::new(s, 0.0)],
        [Complex64::new(-s, 0.0), phase.conj() * c],
    ])
}

/// Kronecker product `a ⊗ b`; row index `2i + j` pairs Alice's `i` with Bob's `j`.
pub fn tensor_product(a: &Unitary2, b: &Unitary2) -> Unitary4 {
    let mut out = [[ZERO; 4]; 4];
    for (ai, a_row) in a.0.iter().enumerate() {
        for (bi, b_row) in b.0.iter().enumerate() {
            for (aj, x) in a_row.iter().enumerate() {
                for (bj, y) in b_row.iter().enumerate() {
                    out[2 * ai + bi][2 * aj + bj] = x * y;
                }
            }
        }
    }
    Unitary4(out)
}

/// `D ⊗ D`: a real signed permutation, `|CC⟩↔|DD⟩`, `|CD⟩ ↦ −|DC⟩`, `|DC⟩ ↦ −|CD⟩`.
pub fn defect_defect() -> Unitary4 {
    let d = strategy_unitary(StrategyParams::DEFECT);
    tensor_product(&d, &d)
}

pub fn validate_gamma(gamma: f64) -> Result<f64> {
    check_range("gamma", gamma, 0.0, FRAC_PI_2)
}

/// `J(γ) = exp{iγ D⊗D/2} = cos(γ/2) I + i sin(γ/2) D⊗D`, exact since `(D⊗D)² = I`.
pub fn entangling_gate(gamma: f64) -> Result<Unitary4> {
    let gamma = validate_gamma(gamma)?;
    let (s, c) = (gamma / 2.0).sin_cos();
    let dd = defect_defect();
    let mut out = [[ZERO; 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            let diag = if i == j { c } else { 0.0 };
            *v = Complex64::new(diag, 0.0) + I * s * dd.0[i][j];
        }
    }
    Ok(Unitary4(out))
}

/// Which side of the board carries `J(γ)` and which carries `J(γ)†`.
///
/// Both choices satisfy the classical correspondence conditions and give the
/// same payoffs whenever both players stay classical (`φ = 0`). They differ by
/// complex conjugation of the whole game, which maps `U(θ, φ)` to `U(θ, −φ)`.
/// With [`Orientation::AdjointSource`] the miracle move `U(π/2, π/2)` secures
/// at least the reward against every classical reply; with
/// [`Orientation::GateSource`] that guarantee belongs to `U(π/2, −π/2)`, which
/// lies outside the strategic space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Orientation {
    /// `|ψ_f⟩ = J (U_A⊗U_B) J†|CC⟩`.
    #[default]
    AdjointSource,
    /// `|ψ_f⟩ = J† (U_A⊗U_B) J|CC⟩`.
    GateSource,
}

/// Precomputed source state and measurement gate for one entanglement level.
#[derive(Debug, Clone, Copy)]
pub struct Board {
    gamma: f64,
    orientation: Orientation,
    source: [Complex64; 4],
    measure: Unitary4,
}

impl Board {
    pub fn new(gamma: f64, orientation: Orientation) -> Result<Self> {
        let gate = entangling_gate(gamma)?;
        let (prepare, measure) = match orientation {
            Orientation::AdjointSource => (gate.adjoint(), gate),
            Orientation::GateSource => (gate, gate.adjoint()),
        };
        Ok(Self {
            gamma: validate_gamma(gamma)?,
            orientation,
            source: prepare.apply(&GameState::basis(CC)).0,
            measure,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// The entangled state the players receive.
    pub fn initial_state(&self) -> GameState {
        GameState(self.source)
    }

    /// Final state for the two local moves, without forming the 4×4 product.
    pub fn final_state(&self, a: &Unitary2, b: &Unitary2) -> GameState {
        let (a, b, p) = (&a.0, &b.0, &self.source);
        // half[k][j] = Σ_l b[j][l] p[2k + l]
        let mut half = [[ZERO; 2]; 2];
        for (k, row) in half.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = b[j][0] * p[2 * k] + b[j][1] * p[2 * k + 1];
            }
        }
        let mut local = [ZERO; 4];
        for i in 0..2 {
            for j in 0..2 {
                local[2 * i + j] = a[i][0] * half[0][j] + a[i][1] * half[1][j];
            }
        }
        GameState(self.measure.apply_raw(&local))
    }

    pub fn evolve(&self, a: StrategyParams, b: StrategyParams) -> GameState {
        self.final_state(&strategy_unitary(a), &strategy_unitary(b))
    }
}

/// Final state of the game before detection, using the default [`Orientation`].
pub fn evolve(gamma: f64, a: StrategyParams, b: StrategyParams) -> Result<GameState> {
    evolve_with(Orientation::default(), gamma, a, b)
}

/// Final state built from full 4×4 products: source gate, `U_A⊗U_B`, measurement gate.
pub fn evolve_with(
    orientation: Orientation,
    gamma: f64,
    a: StrategyParams,
    b: StrategyParams,
) -> Result<GameState> {
    let gate = entangling_gate(gamma)?;
    let (prepare, measure) = match orientation {
        Orientation::AdjointSource => (gate.adjoint(), gate),
        Orientation::GateSource => (gate, gate.adjoint()),
    };
    let moves = tensor_product(&strategy_unitary(a), &strategy_unitary(b));
    Ok((measure * moves * prepare).apply(&GameState::basis(CC)))
}

/// Exact detection probabilities `P_σσ′ = |⟨σσ′|ψ⟩|²`.
pub fn outcome_distribution(state: &GameState) -> OutcomeDistribution {
    let p = state.0.map(|z| z.norm_sqr());
    OutcomeDistribution::from_raw(p)
}

/// Schmidt weights `(cos²(γ/2), sin²(γ/2))` of the entangled source state.
pub fn schmidt_weights(gamma: f64) -> Result<(f64, f64)> {
    let gamma = validate_gamma(gamma)?;
    let (s, c) = (gamma / 2.0).sin_cos();
    Ok((c * c, s * s))
}
