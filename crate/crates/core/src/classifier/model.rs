use std::collections::HashMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::dataset::{DataRow, Encoding};
use crate::error::{Error, Result};
use crate::model::{PredictiveResult, Threshold};

/// A distinct training row and how often it occurred.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrainingWorld {
    pub values: Vec<u32>,
    pub goal: u32,
    pub count: u64,
}

/// The training set read as a distribution over (possibly duplicated)
/// worlds: each distinct row has mass `multiplicity / |train|`. Worlds are
/// kept in first-appearance order, which fixes the float summation order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalWorlds {
    worlds: Vec<TrainingWorld>,
    total: u64,
}

/// Builds the empirical world distribution of a training set.
pub fn fit_worlds<'a>(train: impl IntoIterator<Item = &'a DataRow>) -> Result<EmpiricalWorlds> {
    let mut index: HashMap<(&[u32], u32), usize> = HashMap::new();
    let mut worlds: Vec<TrainingWorld> = Vec::new();
    let mut total = 0u64;
    for row in train {
        total += 1;
        match index.get(&(row.values.as_slice(), row.goal)) {
            Some(&i) => worlds[i].count += 1,
            None => {
                index.insert((row.values.as_slice(), row.goal), worlds.len());
                worlds.push(TrainingWorld {
                    values: row.values.clone(),
                    goal: row.goal,
                    count: 1,
                });
            }
        }
    }
    if total == 0 {
        return Err(Error::EmptyDataset);
    }
    Ok(EmpiricalWorlds { worlds, total })
}

impl EmpiricalWorlds {
    pub fn from_parts(worlds: Vec<TrainingWorld>) -> Result<Self> {
        let total = worlds.iter().map(|w| w.count).sum();
        if total == 0 {
            return Err(Error::EmptyDataset);
        }
        Ok(EmpiricalWorlds { worlds, total })
    }

    pub fn worlds(&self) -> &[TrainingWorld] {
        &self.worlds
    }

    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    /// Number of training rows.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn mass(&self, i: usize) -> f64 {
        self.worlds[i].count as f64 / self.total as f64
    }

    pub fn exact_mass(&self, i: usize) -> BigRational {
        BigRational::new(self.worlds[i].count.into(), self.total.into())
    }

    /// Per world, how many of `attrs` agree with it.
    pub fn match_counts(&self, attrs: &[u32]) -> Vec<u16> {
        self.worlds
            .iter()
            .map(|w| w.values.iter().zip(attrs).filter(|(a, b)| a == b).count() as u16)
            .collect()
    }

    /// `p(goal = target | Δ)` from precomputed match counts:
    ///
    /// ```text
    /// Σ_w p(α|w) μ^m_w (1-μ)^(k-m_w) p(w)  /  Σ_w μ^m_w (1-μ)^(k-m_w) p(w)
    /// ```
    pub fn score(&self, matches: &[u16], k: usize, target: u32, mu: f64) -> PredictiveResult<f64> {
        let table: Vec<f64> = (0..=k)
            .map(|m| mu.powi(m as i32) * (1.0 - mu).powi((k - m) as i32))
            .collect();
        let mut num = 0.0;
        let mut den = 0.0;
        for (i, (w, &m)) in self.worlds.iter().zip(matches).enumerate() {
            let joint = table[m as usize] * self.mass(i);
            let goal = if w.goal == target { mu } else { 1.0 - mu };
            num += goal * joint;
            den += joint;
        }
        if den == 0.0 {
            PredictiveResult::Undefined
        } else {
            PredictiveResult::Probability(num / den)
        }
    }

    /// `p(goal = target | Δ)` for an encoded attribute vector.
    pub fn predictive(&self, attrs: &[u32], target: u32, mu: f64) -> PredictiveResult<f64> {
        self.score(&self.match_counts(attrs), attrs.len(), target, mu)
    }
}

/// Empirical worlds, the encoding they were built with, and the selected
/// noise parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainedModel {
    pub encoding: Encoding,
    pub worlds: EmpiricalWorlds,
    pub mu_hat: f64,
}

impl TrainedModel {
    /// Code of the positive goal value.
    pub fn positive_code(&self) -> u32 {
        self.encoding.goal.code(&self.encoding.positive)
    }

    fn check_arity(&self, attrs: &[u32]) -> Result<()> {
        if attrs.len() != self.encoding.attributes.len() {
            return Err(Error::Schema(format!(
                "{} attribute values for {} columns",
                attrs.len(),
                self.encoding.attributes.len()
            )));
        }
        Ok(())
    }

    /// Probability of the positive goal atom given `Δ`, at `μ̂`.
    pub fn probability(&self, attrs: &[u32]) -> Result<PredictiveResult<f64>> {
        self.check_arity(attrs)?;
        Ok(self.worlds.predictive(attrs, self.positive_code(), self.mu_hat))
    }

    /// Probability of an arbitrary goal value given `Δ`, at `μ̂`.
    pub fn probability_of(&self, attrs: &[u32], goal: u32) -> Result<PredictiveResult<f64>> {
        self.check_arity(attrs)?;
        Ok(self.worlds.predictive(attrs, goal, self.mu_hat))
    }

    /// Bernoulli likelihood of the ground atom `Col=value` in training
    /// world `world`: `μ` if the world has that value, `1 - μ` otherwise.
    pub fn likelihood_on_row(&self, atom: &str, world: usize, mu: f64) -> Result<f64> {
        let (col, value) = atom
            .split_once('=')
            .ok_or_else(|| Error::InvalidAtomName(atom.to_string()))?;
        let w = &self.worlds.worlds[world];
        let matches = if col == self.encoding.goal.name {
            self.encoding.goal.code(value) == w.goal
        } else {
            let i = self
                .encoding
                .attribute_index(col)
                .ok_or_else(|| Error::UnknownColumn(col.to_string()))?;
            self.encoding.attributes[i].code(value) == w.values[i]
        };
        Ok(if matches { mu } else { 1.0 - mu })
    }
}

/// Bayesian predictive entailment of the positive goal: the verdict is
/// `p(α | Δ) ≥ θ`, false when the probability is undefined.
pub fn predict(model: &TrainedModel, attrs: &[u32], theta: &Threshold<f64>) -> Result<(bool, PredictiveResult<f64>)> {
    let p = model.probability(attrs)?;
    Ok((p.meets(theta), p))
}

/// Picks the grid value that makes the most cross-validation rows entail
/// their own goal at `θ = 0.5`. Ties go to the largest `μ`.
pub fn select_mu(worlds: &EmpiricalWorlds, cv: &[DataRow], grid: &[f64]) -> Result<f64> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if let Some(bad) = grid.iter().find(|m| !(0.0..=1.0).contains(*m)) {
        return Err(Error::InvalidProbability(bad.to_string()));
    }
    let half = Threshold::new(0.5).expect("0.5 is a valid threshold");
    let matches: Vec<Vec<u16>> = cv.iter().map(|r| worlds.match_counts(&r.values)).collect();
    let mut best: Option<(usize, f64)> = None;
    for &mu in grid {
        let correct = cv
            .iter()
            .zip(&matches)
            .filter(|(r, m)| worlds.score(m, r.values.len(), r.goal, mu).meets(&half))
            .count();
        best = match best {
            Some((c, m)) if c > correct || (c == correct && m > mu) => Some((c, m)),
            _ => Some((correct, mu)),
        };
    }
    Ok(best.expect("grid is non-empty").1)
}

/// The noise grid searched during training.
pub const DEFAULT_GRID: [f64; 6] = [0.0, 0.2, 0.4, 0.6, 0.8, 1.0];

/// Fits the empirical worlds on `train` and selects `μ̂` on `cv`.
pub fn train(encoding: &Encoding, train: &[DataRow], cv: &[DataRow], grid: &[f64]) -> Result<TrainedModel> {
    let worlds = fit_worlds(train)?;
    let mu_hat = select_mu(&worlds, cv, grid)?;
    Ok(TrainedModel {
        encoding: encoding.clone(),
        worlds,
        mu_hat,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::{Dataset, SchemaSpec};

    fn row(values: &[u32], goal: u32) -> DataRow {
        DataRow {
            id: String::new(),
            values: values.to_vec(),
            goal,
            positive: goal == 2,
        }
    }

    #[test]
    fn duplicate_rows_merge() {
        let rows = [row(&[1, 1], 1), row(&[1, 1], 1), row(&[2, 1], 2), row(&[1, 1], 1)];
        let w = fit_worlds(&rows).unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(w.exact_mass(0), BigRational::new(3.into(), 4.into()));
        assert_eq!(w.exact_mass(1), BigRational::new(1.into(), 4.into()));
        assert!(matches!(fit_worlds(&[]), Err(Error::EmptyDataset)));
    }

    #[test]
    fn half_noise_is_uninformative() {
        // Every factor, the goal's own included, is 1/2, so the posterior
        // over worlds is the training distribution and the goal reading is
        // a fair coin: p = μ·q + (1-μ)(1-q) = 1/2 for any goal mass q.
        let rows = [
            row(&[1, 1], 1),
            row(&[2, 1], 2),
            row(&[2, 2], 2),
            row(&[1, 3], 1),
            row(&[1, 3], 2),
        ];
        let w = fit_worlds(&rows).unwrap();
        for attrs in [[2, 3], [1, 1], [9, 9]] {
            assert_eq!(w.predictive(&attrs, 2, 0.5), PredictiveResult::Probability(0.5));
        }
        // Away from 1/2 the same identity recovers q, the posterior goal mass.
        let mu = 0.8;
        let p = w.predictive(&[9, 9], 2, mu).to_f64().unwrap();
        let q = (p - (1.0 - mu)) / (2.0 * mu - 1.0);
        assert!((q - 0.6).abs() < 1e-12, "{q}");
    }

    #[test]
    fn noiseless_exact_match() {
        let rows = [row(&[1, 1], 1), row(&[2, 1], 2), row(&[2, 2], 1)];
        let w = fit_worlds(&rows).unwrap();
        assert_eq!(w.predictive(&[2, 1], 2, 1.0), PredictiveResult::Probability(1.0));
        assert_eq!(w.predictive(&[3, 3], 2, 1.0), PredictiveResult::Undefined);
        assert_eq!(w.predictive(&[2, 1], 2, 0.0), PredictiveResult::Undefined);
    }

    #[test]
    fn mu_selection() {
        let rows = [row(&[1], 1), row(&[2], 2)];
        let w = fit_worlds(&rows).unwrap();
        assert_eq!(select_mu(&w, &rows, &DEFAULT_GRID).unwrap(), 1.0);
        // A single cv row whose attribute is unseen: every μ gives 1/2 for
        // each goal, so all tie and the largest wins.
        assert_eq!(select_mu(&w, &[row(&[9], 2)], &[0.2, 0.6, 0.4]).unwrap(), 0.6);
        assert!(matches!(select_mu(&w, &rows, &[]), Err(Error::EmptyGrid)));
    }

    #[test]
    fn likelihood_on_rows() {
        let ds = Dataset::from_csv_str("TC,y\n3,0\n1,1\n", &SchemaSpec::new("y")).unwrap();
        let m = train(&ds.encoding, &ds.rows, &ds.rows, &DEFAULT_GRID).unwrap();
        assert_eq!(m.likelihood_on_row("TC=3", 0, 0.8).unwrap(), 0.8);
        assert!((m.likelihood_on_row("TC=3", 1, 0.8).unwrap() - 0.2).abs() < 1e-15);
        assert!((m.likelihood_on_row("TC=9", 0, 0.8).unwrap() - 0.2).abs() < 1e-15);
        assert_eq!(m.likelihood_on_row("y=1", 1, 0.8).unwrap(), 0.8);
        assert!(matches!(
            m.likelihood_on_row("Age=3", 0, 0.8),
            Err(Error::UnknownColumn(_))
        ));
    }
}
