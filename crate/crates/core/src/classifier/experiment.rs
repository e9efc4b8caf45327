use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::dataset::{DataRow, Dataset};
use super::metrics::{accuracy, roc_auc, Metrics, Summary};
use super::model::{train, TrainedModel, DEFAULT_GRID};
use super::split::{split, SplitConfig};
use crate::error::{Error, Result};
use crate::model::{PredictiveResult, Threshold};

/// Per-row outcome on a test set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowPrediction {
    pub id: String,
    /// Probability of the positive goal, `None` if undefined.
    pub probability: Option<f64>,
    /// `p(positive | Δ) ≥ θ`.
    pub verdict: bool,
    /// The row entails its own goal at `θ = 0.5`.
    pub correct: bool,
}

/// Scores every test row. Accuracy counts rows that entail their true goal
/// at `θ = 0.5`; AUC sweeps `θ` over the positive-goal probabilities;
/// runtime is the wall-clock time of the positive-goal prediction, averaged
/// over rows.
pub fn evaluate(model: &TrainedModel, test: &[DataRow]) -> Result<(Metrics, Vec<RowPrediction>)> {
    if test.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let half = Threshold::new(0.5).expect("0.5 is a valid threshold");
    let mut rows = Vec::with_capacity(test.len());
    let mut elapsed = 0.0;
    for r in test {
        let start = Instant::now();
        let p = model.probability(&r.values)?;
        elapsed += start.elapsed().as_secs_f64();
        let own = if r.goal == model.positive_code() {
            p.clone()
        } else {
            model.probability_of(&r.values, r.goal)?
        };
        rows.push(RowPrediction {
            id: r.id.clone(),
            probability: p.to_f64(),
            verdict: p.meets(&half),
            correct: own.meets(&half),
        });
    }
    let correct: Vec<bool> = rows.iter().map(|p| p.correct).collect();
    let scores: Vec<Option<f64>> = rows.iter().map(|p| p.probability).collect();
    let labels: Vec<bool> = test.iter().map(|r| r.positive).collect();
    let metrics = Metrics {
        accuracy: accuracy(&correct),
        auc: roc_auc(&scores, &labels),
        runtime_per_prediction_s: elapsed / test.len() as f64,
    };
    Ok((metrics, rows))
}

/// Accuracy of always predicting the most frequent training goal (ties go
/// to the smaller code).
pub fn majority_baseline(train: &[DataRow], test: &[DataRow]) -> f64 {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for r in train {
        *counts.entry(r.goal).or_default() += 1;
    }
    let majority = counts
        .iter()
        .fold(None, |best: Option<(u32, usize)>, (&g, &c)| match best {
            Some((_, bc)) if bc >= c => best,
            _ => Some((g, c)),
        })
        .map(|(g, _)| g);
    let hits: Vec<bool> = test.iter().map(|r| Some(r.goal) == majority).collect();
    accuracy(&hits)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub splits: usize,
    /// Split `i` uses seed `seed + i`.
    pub seed: u64,
    pub grid: Vec<f64>,
    pub train: f64,
    pub cv: f64,
    pub test: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let s = SplitConfig::default();
        ExperimentConfig {
            splits: 100,
            seed: 0,
            grid: DEFAULT_GRID.to_vec(),
            train: s.train,
            cv: s.cv,
            test: s.test,
        }
    }
}

impl ExperimentConfig {
    pub fn split_config(&self, index: usize) -> SplitConfig {
        SplitConfig {
            train: self.train,
            cv: self.cv,
            test: self.test,
            seed: self.seed.wrapping_add(index as u64),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitOutcome {
    pub seed: u64,
    pub mu_hat: f64,
    #[serde(flatten)]
    pub metrics: Metrics,
    pub baseline_accuracy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub accuracy: Summary,
    pub auc: Summary,
    pub runtime_per_prediction_s: Summary,
    pub baseline_accuracy: Summary,
    /// How often each grid value was selected, keyed by its decimal form.
    pub mu_hat_counts: BTreeMap<String, usize>,
    pub splits: Vec<SplitOutcome>,
}

/// Splits, trains, selects `μ̂` and evaluates once.
pub fn run_split(ds: &Dataset, cfg: &SplitConfig, grid: &[f64]) -> Result<(TrainedModel, SplitOutcome)> {
    let parts = split(ds.len(), cfg)?;
    let train_rows = ds.select(&parts.train);
    let cv_rows = ds.select(&parts.cv);
    let test_rows = ds.select(&parts.test);
    let model = train(&ds.encoding, &train_rows, &cv_rows, grid)?;
    let (metrics, _) = evaluate(&model, &test_rows)?;
    let outcome = SplitOutcome {
        seed: cfg.seed,
        mu_hat: model.mu_hat,
        metrics,
        baseline_accuracy: majority_baseline(&train_rows, &test_rows),
    };
    Ok((model, outcome))
}

/// Repeats [`run_split`] over `cfg.splits` seeds and aggregates in seed
/// order.
pub fn experiment(ds: &Dataset, cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    if cfg.splits == 0 {
        return Err(Error::InvalidSplit("at least one split is needed".into()));
    }
    let mut splits = Vec::with_capacity(cfg.splits);
    for i in 0..cfg.splits {
        splits.push(run_split(ds, &cfg.split_config(i), &cfg.grid)?.1);
    }
    let col = |f: &dyn Fn(&SplitOutcome) -> Option<f64>| -> Vec<f64> { splits.iter().filter_map(f).collect() };
    let mut mu_hat_counts = BTreeMap::new();
    for s in &splits {
        *mu_hat_counts.entry(format!("{}", s.mu_hat)).or_default() += 1;
    }
    Ok(ExperimentReport {
        accuracy: Summary::of(&col(&|s| Some(s.metrics.accuracy))),
        auc: Summary::of(&col(&|s| s.metrics.auc)),
        runtime_per_prediction_s: Summary::of(&col(&|s| Some(s.metrics.runtime_per_prediction_s))),
        baseline_accuracy: Summary::of(&col(&|s| Some(s.baseline_accuracy))),
        mu_hat_counts,
        splits,
    })
}

/// `(verdict, probability)` for a batch of encoded attribute vectors.
pub fn predict_batch(
    model: &TrainedModel,
    rows: &[Vec<u32>],
    theta: &Threshold<f64>,
) -> Result<Vec<(bool, PredictiveResult<f64>)>> {
    rows.iter().map(|r| super::model::predict(model, r, theta)).collect()
}
