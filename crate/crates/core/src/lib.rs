//! Exact inference for a generative model of logical consequence.
//!
//! Worlds carry a categorical prior; each formula's observed truth value is
//! a Bernoulli draw that agrees with its actual value in the world with
//! probability `μ`. Entailment is Bayesian prediction on that model. The
//! crate covers:
//!
//! - [`logic`]: propositional formulas, parsing, world enumeration;
//! - [`model`]: priors, likelihoods, posteriors, Bayesian and MAP entailment;
//! - [`consequence`]: classical, paraconsistent and preferential relations;
//! - [`classifier`]: the Bayesian-entailment classifier over categorical data;
//! - [`suites`]: randomized invariant checks shared by tests and the CLI.

pub mod classifier;
pub mod consequence;
pub mod error;
pub mod logic;
pub mod model;
pub mod prob;
pub mod suites;

pub use consequence::{EntailmentVerdict, PreferentialStructure, RankWeighting};
pub use error::{Error, Result};
pub use logic::{parse_formula, Atom, Formula, KnowledgeBase, PossibleWorld, Signature, WorldSpace};
pub use model::{ExactModel, FloatModel, LogicalModel, NoiseParam, PredictiveResult, Threshold, WorldDistribution};
pub use prob::{Arithmetic, Exact, Prob};
