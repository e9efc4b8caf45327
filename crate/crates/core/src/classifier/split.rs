use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitConfig {
    pub train: f64,
    pub cv: f64,
    pub test: f64,
    pub seed: u64,
}

impl Default for SplitConfig {
    fn default() -> Self {
        SplitConfig {
            train: 0.6,
            cv: 0.2,
            test: 0.2,
            seed: 0,
        }
    }
}

impl SplitConfig {
    pub fn with_seed(seed: u64) -> Self {
        SplitConfig {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let parts = [self.train, self.cv, self.test];
        if parts.iter().any(|f| !(f.is_finite() && *f > 0.0)) {
            return Err(Error::InvalidSplit("fractions must be positive".into()));
        }
        if (parts.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidSplit("fractions must sum to 1".into()));
        }
        Ok(())
    }

    /// `(⌊train·n⌋, ⌊cv·n⌋, remainder)`.
    pub fn sizes(&self, n: usize) -> (usize, usize, usize) {
        // The small epsilon keeps 0.6 * 10 from flooring to 5.
        let floor = |f: f64| ((f * n as f64) + 1e-9).floor() as usize;
        let tr = floor(self.train);
        let cv = floor(self.cv);
        (tr, cv, n - tr - cv)
    }
}

/// Row indices of a train / cross-validation / test partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Split {
    pub train: Vec<usize>,
    pub cv: Vec<usize>,
    pub test: Vec<usize>,
}

/// Shuffles `0..n` with a ChaCha8 stream seeded by `cfg.seed` and cuts it
/// into three consecutive blocks.
pub fn split(n: usize, cfg: &SplitConfig) -> Result<Split> {
    cfg.validate()?;
    if n < 5 {
        return Err(Error::DatasetTooSmall(n));
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(&mut ChaCha8Rng::seed_from_u64(cfg.seed));
    let (tr, cv, _) = cfg.sizes(n);
    let test = idx.split_off(tr + cv);
    let cv_part = idx.split_off(tr);
    Ok(Split {
        train: idx,
        cv: cv_part,
        test,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn titanic_sizes() {
        let s = split(891, &SplitConfig::with_seed(7)).unwrap();
        assert_eq!((s.train.len(), s.cv.len(), s.test.len()), (534, 178, 179));
        let mut all: Vec<usize> = s.train.iter().chain(&s.cv).chain(&s.test).copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..891).collect::<Vec<_>>());
    }

    #[test]
    fn deterministic_per_seed() {
        let a = split(891, &SplitConfig::with_seed(3)).unwrap();
        assert_eq!(a, split(891, &SplitConfig::with_seed(3)).unwrap());
        assert_ne!(a, split(891, &SplitConfig::with_seed(4)).unwrap());
    }

    #[test]
    fn rejects_small_and_bad_configs() {
        assert!(matches!(
            split(4, &SplitConfig::default()),
            Err(Error::DatasetTooSmall(4))
        ));
        let bad = SplitConfig {
            train: 0.5,
            ..SplitConfig::default()
        };
        assert!(matches!(split(10, &bad), Err(Error::InvalidSplit(_))));
        assert_eq!(SplitConfig::default().sizes(10), (6, 2, 2));
        assert_eq!(SplitConfig::default().sizes(5), (3, 1, 1));
    }
}
