//! Bayesian paraconsistent entailment: the `μ → 1` limit of predictive
//! inference, evaluated in closed form over the maximally satisfying worlds
//! `((Δ))`:
//!
//! ```text
//! p(α | Δ) = Σ_{ŵ ∈ ((Δ))} ⟦α⟧_ŵ p(ŵ) / Σ_{ŵ ∈ ((Δ))} p(ŵ)
//! ```
//!
//! No limit is taken numerically.

use crate::error::{Error, Result};
use crate::logic::{truth_table, Formula, KnowledgeBase, SatisfiedCounts};
use crate::model::{sum, PredictiveResult, Threshold, WorldDistribution};
use crate::prob::Prob;

use super::EntailmentVerdict;

/// Limit predictive probability under an arbitrary prior. Fails with
/// [`Error::ZeroMassSupport`] when every world of `((Δ))` has zero mass.
pub fn paraconsistent_predictive<P: Prob>(kb: &KnowledgeBase, f: &Formula, prior: &WorldDistribution<P>) -> Result<P> {
    let space = prior.space();
    let counts = SatisfiedCounts::new(kb, space)?;
    let table = truth_table(f, space)?;
    let support: Vec<usize> = counts.max_support_indices().collect();
    let den = sum(support.iter().map(|&i| prior.mass(i).clone()));
    if den.is_zero() {
        return Err(Error::ZeroMassSupport);
    }
    let num = sum(support.iter().filter(|&&i| table[i]).map(|&i| prior.mass(i).clone()));
    Ok(num / den)
}

/// `Δ |≈_θ f` in the limit model. The witness is `((Δ))`.
pub fn paraconsistent_entails<P: Prob>(
    kb: &KnowledgeBase,
    f: &Formula,
    theta: &Threshold<P>,
    prior: &WorldDistribution<P>,
) -> Result<EntailmentVerdict<P>> {
    let p = paraconsistent_predictive(kb, f, prior)?;
    let space = prior.space();
    let counts = SatisfiedCounts::new(kb, space)?;
    Ok(EntailmentVerdict {
        holds: p >= *theta.value(),
        probability: Some(PredictiveResult::Probability(p)),
        witness: Some(counts.max_support_indices().map(|i| space.world(i)).collect()),
    })
}
