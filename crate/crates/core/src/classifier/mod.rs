//! Bayesian-entailment classifier over categorical data.
//!
//! Each training row is a possible world; attribute values and the goal are
//! ground atoms `Attr=value`. A query `Δ` is answered by Bayesian predictive
//! entailment against the empirical world distribution, with the noise
//! parameter chosen on a held-out set.

mod dataset;
pub mod embed;
mod experiment;
pub mod metrics;
mod model;
mod persist;
mod schema;
mod split;
pub mod synthetic;

pub use dataset::{ColumnCodec, DataRow, Dataset, Encoding, MISSING, UNSEEN};
pub use embed::{embed_worlds, EmbeddedWorlds};
pub use experiment::{
    evaluate, experiment, majority_baseline, predict_batch, run_split, ExperimentConfig, ExperimentReport,
    RowPrediction, SplitOutcome,
};
pub use metrics::{Metrics, Summary};
pub use model::{fit_worlds, predict, select_mu, train, EmpiricalWorlds, TrainedModel, TrainingWorld, DEFAULT_GRID};
pub use persist::{MODEL_FORMAT, MODEL_VERSION};
pub use schema::{BinRule, ResolvedBin, SchemaSpec};
pub use split::{split, Split, SplitConfig};
