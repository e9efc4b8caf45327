//! Exact predictive inference by enumeration over worlds.
//!
//! Sums run over worlds in index order, so float mode is reproducible.

use crate::error::Result;
use crate::logic::{compile_kb, evaluate, truth_table, Formula, KnowledgeBase, PossibleWorld};
use crate::model::distribution::{argmax_indices, sum};
use crate::model::{LogicalModel, NoiseParam, PredictiveResult, Threshold, WorldDistribution};
use crate::prob::Prob;

fn bernoulli<P: Prob>(truth: bool, mu: &NoiseParam<P>) -> P {
    if truth {
        mu.value().clone()
    } else {
        P::one() - mu.value().clone()
    }
}

/// `p(f | w) = μ` if `f` is true in `w`, else `1 − μ`.
pub fn likelihood<P: Prob>(f: &Formula, w: &PossibleWorld, mu: &NoiseParam<P>) -> Result<P> {
    Ok(bernoulli(evaluate(f, w)?, mu))
}

/// `p(Δ | w) = Π_{α ∈ Δ} p(α | w)`, one factor per occurrence.
pub fn set_likelihood<P: Prob>(kb: &KnowledgeBase, w: &PossibleWorld, mu: &NoiseParam<P>) -> Result<P> {
    let compiled = compile_kb(kb, w.signature())?;
    Ok(compiled
        .iter()
        .fold(P::one(), |acc, c| acc * bernoulli(c.eval(w.bits()), mu)))
}

/// `p(f = value) = Σ_w p(f = value | w) φ_w`. With `value = false` this is
/// the probability that `f` is read as false.
pub fn truth_probability<P: Prob>(f: &Formula, value: bool, m: &LogicalModel<P>) -> Result<P> {
    let table = truth_table(f, m.space())?;
    Ok(sum(table
        .iter()
        .zip(m.prior.phi())
        .map(|(&t, phi)| bernoulli(t == value, &m.noise) * phi.clone())))
}

/// `p(f) = Σ_w p(f | w) φ_w`.
pub fn marginal<P: Prob>(f: &Formula, m: &LogicalModel<P>) -> Result<P> {
    truth_probability(f, true, m)
}

/// Unnormalised posterior weights `p(Δ | w) φ_w`, by world index.
fn joint_weights<P: Prob>(kb: &KnowledgeBase, m: &LogicalModel<P>) -> Result<Vec<P>> {
    let space = m.space();
    let compiled = compile_kb(kb, space.signature())?;
    let mu = m.mu().clone();
    let miss = P::one() - mu.clone();
    // μ^k (1−μ)^(n−k) for every possible count k.
    let n = kb.len();
    let by_count: Vec<P> = (0..=n).map(|k| mu.powu(k) * miss.powu(n - k)).collect();
    Ok((0..space.len() as u64)
        .zip(m.prior.phi())
        .map(|(bits, phi)| {
            let k = compiled.iter().filter(|c| c.eval(bits)).count();
            by_count[k].clone() * phi.clone()
        })
        .collect())
}

/// `p(W | Δ)`, or `None` when the normalising constant is zero.
pub fn posterior<P: Prob>(kb: &KnowledgeBase, m: &LogicalModel<P>) -> Result<Option<WorldDistribution<P>>> {
    let weights = joint_weights(kb, m)?;
    let z = sum(weights.iter().cloned());
    if z.is_zero() {
        return Ok(None);
    }
    let phi = weights.into_iter().map(|w| w / z.clone()).collect();
    Ok(Some(WorldDistribution::from_parts_unchecked(m.space().clone(), phi)))
}

/// `p(f | Δ) = Σ_w p(f | w) p(w | Δ)`.
pub fn predictive<P: Prob>(f: &Formula, kb: &KnowledgeBase, m: &LogicalModel<P>) -> Result<PredictiveResult<P>> {
    let weights = joint_weights(kb, m)?;
    let z = sum(weights.iter().cloned());
    if z.is_zero() {
        return Ok(PredictiveResult::Undefined);
    }
    let table = truth_table(f, m.space())?;
    let num = sum(weights.into_iter().zip(table).map(|(w, t)| bernoulli(t, &m.noise) * w));
    Ok(PredictiveResult::Probability(num / z))
}

/// `Δ |≈_θ f`: the predictive probability is defined and at least `θ`.
pub fn bayesian_entails<P: Prob>(
    kb: &KnowledgeBase,
    f: &Formula,
    theta: &Threshold<P>,
    m: &LogicalModel<P>,
) -> Result<bool> {
    Ok(predictive(f, kb, m)?.meets(theta))
}

/// Indices of `argmax_w p(w | Δ)`, or `None` if the posterior is undefined.
pub fn map_estimates<P: Prob>(kb: &KnowledgeBase, m: &LogicalModel<P>) -> Result<Option<Vec<usize>>> {
    let weights = joint_weights(kb, m)?;
    if sum(weights.iter().cloned()).is_zero() {
        return Ok(None);
    }
    Ok(Some(argmax_indices(&weights)))
}

/// `Δ |≈_MAP f`: some maximiser of the posterior satisfies `f`. Ties are
/// existential, so both `f` and `¬f` can hold. An undefined posterior
/// entails nothing.
pub fn map_entails<P: Prob>(kb: &KnowledgeBase, f: &Formula, m: &LogicalModel<P>) -> Result<bool> {
    let Some(argmax) = map_estimates(kb, m)? else {
        return Ok(false);
    };
    let table = truth_table(f, m.space())?;
    Ok(argmax.into_iter().any(|i| table[i]))
}
