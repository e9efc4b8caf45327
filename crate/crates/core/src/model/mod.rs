//! The probabilistic-logical model: a categorical prior over worlds and a
//! Bernoulli truth-noise likelihood per formula occurrence.

mod distribution;
mod inference;

use std::fmt;

use num_rational::BigRational;

pub use distribution::{atoms_header, WorldDistribution};
pub use inference::{
    bayesian_entails, likelihood, map_entails, map_estimates, marginal, posterior, predictive, set_likelihood,
    truth_probability,
};

pub(crate) use distribution::{argmax_indices, sum};

use crate::error::{Error, Result};
use crate::prob::{in_unit_interval, Arithmetic, Prob};

/// Probability `μ` that a formula's observed truth value equals its actual
/// truth value in a world.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseParam<P>(P);

impl<P: Prob> NoiseParam<P> {
    pub fn new(mu: P) -> Result<Self> {
        if !in_unit_interval(&mu) {
            return Err(Error::InvalidProbability(mu.render()));
        }
        Ok(NoiseParam(mu))
    }

    /// `μ = 1`: formulas are read without noise.
    pub fn noiseless() -> Self {
        NoiseParam(P::one())
    }

    pub fn value(&self) -> &P {
        &self.0
    }
}

/// Entailment threshold `θ ∈ [0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Threshold<P>(P);

impl<P: Prob> Threshold<P> {
    pub fn new(theta: P) -> Result<Self> {
        if !in_unit_interval(&theta) {
            return Err(Error::InvalidProbability(theta.render()));
        }
        Ok(Threshold(theta))
    }

    pub fn one() -> Self {
        Threshold(P::one())
    }

    pub fn half() -> Self {
        Threshold(P::from_rational(&BigRational::new(1.into(), 2.into())))
    }

    pub fn value(&self) -> &P {
        &self.0
    }
}

/// Predictive probability, or `Undefined` when the normalising constant
/// `Σ_w p(Δ|w) p(w)` is zero.
#[derive(Debug, Clone, PartialEq)]
pub enum PredictiveResult<P> {
    Probability(P),
    Undefined,
}

impl<P: Prob> PredictiveResult<P> {
    pub fn probability(&self) -> Option<&P> {
        match self {
            PredictiveResult::Probability(p) => Some(p),
            PredictiveResult::Undefined => None,
        }
    }

    pub fn is_defined(&self) -> bool {
        matches!(self, PredictiveResult::Probability(_))
    }

    /// Defined and at least `θ`. An undefined value never meets a threshold.
    pub fn meets(&self, theta: &Threshold<P>) -> bool {
        match self {
            PredictiveResult::Probability(p) => p >= theta.value(),
            PredictiveResult::Undefined => false,
        }
    }

    pub fn to_f64(&self) -> Option<f64> {
        self.probability().map(Prob::to_f64)
    }

    /// `"3/5"`, `"0.6"` or `"undefined"`.
    pub fn render(&self) -> String {
        match self {
            PredictiveResult::Probability(p) => p.render(),
            PredictiveResult::Undefined => "undefined".to_string(),
        }
    }
}

impl<P: Prob> fmt::Display for PredictiveResult<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `{p(Δ|W, μ), p(W | φ)}`.
#[derive(Debug, Clone)]
pub struct LogicalModel<P> {
    pub prior: WorldDistribution<P>,
    pub noise: NoiseParam<P>,
}

/// Model with exact rational arithmetic.
pub type ExactModel = LogicalModel<BigRational>;
/// Model with `f64` arithmetic and a fixed (index-order) summation order.
pub type FloatModel = LogicalModel<f64>;

impl<P: Prob> LogicalModel<P> {
    pub fn new(prior: WorldDistribution<P>, noise: NoiseParam<P>) -> Self {
        LogicalModel { prior, noise }
    }

    pub fn space(&self) -> &crate::logic::WorldSpace {
        self.prior.space()
    }

    pub fn mu(&self) -> &P {
        self.noise.value()
    }

    pub fn arithmetic(&self) -> Arithmetic {
        if std::any::TypeId::of::<P>() == std::any::TypeId::of::<f64>() {
            Arithmetic::Float
        } else {
            Arithmetic::Exact
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_ranges() {
        assert!(NoiseParam::new(1.5f64).is_err());
        assert!(NoiseParam::new(-0.1f64).is_err());
        assert!(Threshold::new(0.0f64).is_ok());
        assert!(Threshold::new(1.01f64).is_err());
    }

    #[test]
    fn undefined_meets_nothing() {
        let u: PredictiveResult<f64> = PredictiveResult::Undefined;
        assert!(!u.meets(&Threshold::new(0.0).unwrap()));
        assert_eq!(u.render(), "undefined");
        assert!(PredictiveResult::Probability(0.6).meets(&Threshold::new(0.6).unwrap()));
    }
}
