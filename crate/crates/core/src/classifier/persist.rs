use std::path::Path;

use serde::{Deserialize, Serialize};

use super::dataset::Encoding;
use super::model::{EmpiricalWorlds, TrainedModel, TrainingWorld};
use crate::error::{read_to_string, Error, Result};

pub const MODEL_FORMAT: &str = "bayesent-model";
pub const MODEL_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct ModelFile {
    format: String,
    version: u32,
    mu_hat: f64,
    encoding: Encoding,
    total: u64,
    worlds: Vec<TrainingWorld>,
}

#[derive(Deserialize)]
struct Header {
    format: Option<String>,
    version: Option<u32>,
}

impl TrainedModel {
    /// Schema, value maps, world table, masses (as counts) and `μ̂`.
    pub fn to_json(&self) -> String {
        let file = ModelFile {
            format: MODEL_FORMAT.into(),
            version: MODEL_VERSION,
            mu_hat: self.mu_hat,
            encoding: self.encoding.clone(),
            total: self.worlds.total(),
            worlds: self.worlds.worlds().to_vec(),
        };
        serde_json::to_string_pretty(&file).expect("model serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let header: Header = serde_json::from_str(text)?;
        if header.format.as_deref() != Some(MODEL_FORMAT) {
            return Err(Error::Schema("not a model file".into()));
        }
        match header.version {
            Some(MODEL_VERSION) => {}
            Some(v) => return Err(Error::ModelVersion(v)),
            None => return Err(Error::Schema("model file has no version".into())),
        }
        let file: ModelFile = serde_json::from_str(text)?;
        let mut encoding = file.encoding;
        encoding.rebuild_lookups();
        let arity = encoding.attributes.len();
        if let Some(w) = file.worlds.iter().find(|w| w.values.len() != arity) {
            return Err(Error::Schema(format!(
                "world has {} values for {arity} attributes",
                w.values.len()
            )));
        }
        let worlds = EmpiricalWorlds::from_parts(file.worlds)?;
        if worlds.total() != file.total {
            return Err(Error::Schema("world counts do not add up to the stored total".into()));
        }
        if !(0.0..=1.0).contains(&file.mu_hat) {
            return Err(Error::InvalidProbability(file.mu_hat.to_string()));
        }
        Ok(TrainedModel {
            encoding,
            worlds,
            mu_hat: file.mu_hat,
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::{train, Dataset, SchemaSpec, DEFAULT_GRID};

    fn model() -> TrainedModel {
        let ds = Dataset::from_csv_str("a,b,y\nx,1,1\nz,2,0\nx,2,0\n", &SchemaSpec::new("y")).unwrap();
        train(&ds.encoding, &ds.rows, &ds.rows, &DEFAULT_GRID).unwrap()
    }

    #[test]
    fn round_trip() {
        let m = model();
        let back = TrainedModel::from_json(&m.to_json()).unwrap();
        assert_eq!(back.mu_hat, m.mu_hat);
        assert_eq!(back.worlds, m.worlds);
        assert_eq!(back.encoding.attributes[0].code("z"), 2);
        assert_eq!(back.probability(&[1, 2]).unwrap(), m.probability(&[1, 2]).unwrap());
    }

    #[test]
    fn version_checked() {
        let text = model().to_json().replace("\"version\": 1", "\"version\": 99");
        assert!(matches!(TrainedModel::from_json(&text), Err(Error::ModelVersion(99))));
        assert!(TrainedModel::from_json("{\"version\": 1}").is_err());
    }
}
