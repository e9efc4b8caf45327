use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{read_to_string, Error, Result};

/// Declarative description of how a CSV file becomes a dataset.
///
/// ```toml
/// goal = "Survived"
/// positive = "1"
/// id = "PassengerId"
/// drop = ["Name"]
///
/// [bins.Age]
/// kind = "equal_width"
/// width = 10
/// max_bins = 8
///
/// [bins.Fare]
/// kind = "quantile"
/// bins = 4
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemaSpec {
    pub goal: String,
    /// Goal value whose atom is predicted.
    #[serde(default = "default_positive")]
    pub positive: String,
    /// Row identifier column. Never used as an attribute.
    #[serde(default)]
    pub id: Option<String>,
    #[serde(default)]
    pub drop: Vec<String>,
    #[serde(default)]
    pub bins: BTreeMap<String, BinRule>,
}

fn default_positive() -> String {
    "1".to_string()
}

/// Discretisation rule for a numeric column.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BinRule {
    /// `min(floor(x / width), max_bins - 1)`; negative values fall in bin 0.
    EqualWidth { width: f64, max_bins: usize },
    /// Edges at the `k/bins` quantiles of the column, computed at load time.
    Quantile { bins: usize },
}

impl SchemaSpec {
    pub fn new(goal: impl Into<String>) -> Self {
        SchemaSpec {
            goal: goal.into(),
            positive: default_positive(),
            id: None,
            drop: Vec::new(),
            bins: BTreeMap::new(),
        }
    }

    /// The preprocessing used for the Kaggle Titanic training file: every
    /// column except `PassengerId` and `Name`, age in decades (capped at
    /// 70+), fare in quartiles.
    pub fn titanic() -> Self {
        let mut bins = BTreeMap::new();
        bins.insert(
            "Age".to_string(),
            BinRule::EqualWidth {
                width: 10.0,
                max_bins: 8,
            },
        );
        bins.insert("Fare".to_string(), BinRule::Quantile { bins: 4 });
        SchemaSpec {
            goal: "Survived".into(),
            positive: "1".into(),
            id: Some("PassengerId".into()),
            drop: vec!["Name".into()],
            bins,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let spec: SchemaSpec = toml::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&read_to_string(path)?)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("schema serialises")
    }

    pub fn validate(&self) -> Result<()> {
        if self.goal.is_empty() {
            return Err(Error::Schema("goal column name is empty".into()));
        }
        if self.drop.contains(&self.goal) || self.id.as_ref() == Some(&self.goal) {
            return Err(Error::Schema(format!("goal `{}` cannot be dropped", self.goal)));
        }
        for (col, rule) in &self.bins {
            match rule {
                BinRule::EqualWidth { width, max_bins } => {
                    if !(width.is_finite() && *width > 0.0) || *max_bins == 0 {
                        return Err(Error::Schema(format!("bad equal_width rule for `{col}`")));
                    }
                }
                BinRule::Quantile { bins } => {
                    if *bins == 0 {
                        return Err(Error::Schema(format!("bad quantile rule for `{col}`")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether `column` is excluded from the attributes.
    pub fn excludes(&self, column: &str) -> bool {
        column == self.goal || self.id.as_deref() == Some(column) || self.drop.iter().any(|d| d == column)
    }
}

/// A binning rule with its data-dependent parameters fixed, so that rows
/// seen at prediction time are discretised exactly as the training data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResolvedBin {
    EqualWidth {
        width: f64,
        max_bins: usize,
    },
    /// Upper bin edges (inclusive), ascending; values above the last edge
    /// go to the last bin.
    Edges {
        upper: Vec<f64>,
    },
}

impl ResolvedBin {
    pub(crate) fn resolve(rule: &BinRule, values: &[f64]) -> ResolvedBin {
        match *rule {
            BinRule::EqualWidth { width, max_bins } => ResolvedBin::EqualWidth { width, max_bins },
            BinRule::Quantile { bins } => {
                let mut sorted = values.to_vec();
                sorted.sort_by(f64::total_cmp);
                let upper = (1..bins).map(|k| quantile(&sorted, k as f64 / bins as f64)).collect();
                ResolvedBin::Edges { upper }
            }
        }
    }

    pub fn bin(&self, x: f64) -> usize {
        match self {
            ResolvedBin::EqualWidth { width, max_bins } => {
                let b = (x / width).floor();
                if b <= 0.0 {
                    0
                } else {
                    (b as usize).min(max_bins - 1)
                }
            }
            ResolvedBin::Edges { upper } => upper.iter().position(|&e| x <= e).unwrap_or(upper.len()),
        }
    }
}

/// Linear-interpolation quantile of sorted data.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return 0.0;
    }
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}
