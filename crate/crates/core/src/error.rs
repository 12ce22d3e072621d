use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} = {value} is outside [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("{0} must be finite")]
    NonFinite(&'static str),

    #[error("payoffs must satisfy t > r > p > s (got r={r}, p={p}, t={t}, s={s})")]
    PayoffOrdering { r: f64, p: f64, t: f64, s: f64 },

    #[error("{name} needs at least 2 steps (got {steps})")]
    TooFewSteps { name: &'static str, steps: usize },

    #[error("{0} must be positive")]
    NotPositive(&'static str),

    /// The threshold indicator did not switch exactly once across the bracket.
    #[error("threshold bracket failed: {0}")]
    Bracket(String),
}

impl Error {
    /// True for failures of a numerical procedure rather than of its inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Bracket(_))
    }
}

/// Accepts `value` in `[lo, hi]`, snapping values within `slack` of a bound onto it.
pub(crate) fn check_range(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<f64> {
    const SLACK: f64 = 1e-9;
    if !value.is_finite() {
        return Err(Error::NonFinite(name));
    }
    if value < lo - SLACK || value > hi + SLACK {
        return Err(Error::OutOfRange { name, value, lo, hi });
    }
    Ok(value.clamp(lo, hi))
}
