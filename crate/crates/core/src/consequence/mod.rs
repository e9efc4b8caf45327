//! Specialised consequence relations built on the logical model.

mod classical;
mod paraconsistent;
mod preferential;

pub use classical::{
    bayesian_classical_entails, bayesian_classical_verdict, classical_entails, classical_model, classical_verdict,
};
pub use paraconsistent::{paraconsistent_entails, paraconsistent_predictive};
pub use preferential::{
    is_order_preserving, limit_map_estimates, map_entails_wrt, map_entails_wrt_prior, maximal_models,
    preferential_entails, prior_from_preference, PreferentialStructure, RankWeighting,
};

use crate::logic::PossibleWorld;
use crate::model::PredictiveResult;

/// Outcome of an entailment query.
#[derive(Debug, Clone)]
pub struct EntailmentVerdict<P> {
    pub holds: bool,
    /// Predictive probability, for the probabilistic relations.
    pub probability: Option<PredictiveResult<P>>,
    /// Supporting worlds: models, `((Δ))`, maximal models or MAP estimates,
    /// depending on the relation.
    pub witness: Option<Vec<PossibleWorld>>,
}
