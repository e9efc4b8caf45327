use num_rational::BigRational;

use crate::error::Result;
use crate::logic::{evaluate, models, Formula, KnowledgeBase, WorldSpace};
use crate::model::{predictive, LogicalModel, NoiseParam, Threshold, WorldDistribution};

use super::EntailmentVerdict;

/// `Δ ⊨ f`: `f` holds in every model of `Δ`. Vacuously true when `Δ` has
/// no model. Plain world-by-world check; the other relations are tested
/// against it.
pub fn classical_entails(kb: &KnowledgeBase, f: &Formula, space: &WorldSpace) -> Result<bool> {
    for w in space.worlds() {
        let mut premises_hold = true;
        for beta in kb {
            if !evaluate(beta, &w)? {
                premises_hold = false;
                break;
            }
        }
        if premises_hold && !evaluate(f, &w)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn classical_verdict(
    kb: &KnowledgeBase,
    f: &Formula,
    space: &WorldSpace,
) -> Result<EntailmentVerdict<BigRational>> {
    Ok(EntailmentVerdict {
        holds: classical_entails(kb, f, space)?,
        probability: None,
        witness: Some(models(kb, space)?),
    })
}

/// The uniform-prior, noiseless model `{p(Δ|W, μ=1), p(W | 1/N, …)}`.
pub fn classical_model(space: &WorldSpace) -> LogicalModel<BigRational> {
    LogicalModel::new(WorldDistribution::uniform(space.clone()), NoiseParam::noiseless())
}

/// Bayesian entailment at `θ = 1` over [`classical_model`]. Agrees with
/// [`classical_entails`] on consistent premises and entails nothing from
/// inconsistent ones (the predictive probability is undefined).
pub fn bayesian_classical_entails(kb: &KnowledgeBase, f: &Formula, space: &WorldSpace) -> Result<bool> {
    Ok(bayesian_classical_verdict(kb, f, space)?.holds)
}

pub fn bayesian_classical_verdict(
    kb: &KnowledgeBase,
    f: &Formula,
    space: &WorldSpace,
) -> Result<EntailmentVerdict<BigRational>> {
    let m = classical_model(space);
    let p = predictive(f, kb, &m)?;
    Ok(EntailmentVerdict {
        holds: p.meets(&Threshold::one()),
        probability: Some(p),
        witness: Some(models(kb, space)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::Signature;
    use crate::model::PredictiveResult;

    fn setup(atoms: &[&str], premises: &[&str], query: &str) -> (WorldSpace, KnowledgeBase, Formula) {
        let space = WorldSpace::over(atoms.iter().copied()).unwrap();
        let mut sig: Signature = space.signature().clone();
        let kb = KnowledgeBase::parse_all(premises, &mut sig).unwrap();
        let f = crate::logic::parse_formula(query, &mut sig).unwrap();
        (space, kb, f)
    }

    #[test]
    fn conjunction_elimination() {
        let (s, kb, f) = setup(&["rain", "wet"], &["rain & wet"], "rain");
        assert!(classical_entails(&kb, &f, &s).unwrap());
        assert!(bayesian_classical_entails(&kb, &f, &s).unwrap());
    }

    #[test]
    fn explosion_split() {
        let (s, kb, f) = setup(&["a", "b"], &["b", "!b"], "a");
        assert!(classical_entails(&kb, &f, &s).unwrap());
        let v = bayesian_classical_verdict(&kb, &f, &s).unwrap();
        assert!(!v.holds);
        assert_eq!(v.probability, Some(PredictiveResult::Undefined));
    }

    #[test]
    fn countermodel() {
        let (s, kb, f) = setup(&["rain", "wet"], &["wet"], "rain");
        assert!(!classical_entails(&kb, &f, &s).unwrap());
        assert!(!bayesian_classical_entails(&kb, &f, &s).unwrap());
    }

    #[test]
    fn empty_premises_and_tautology() {
        let (s, kb, f) = setup(&["a"], &[], "a | !a");
        assert!(bayesian_classical_entails(&kb, &f, &s).unwrap());
        assert!(classical_entails(&kb, &f, &s).unwrap());
    }
}
