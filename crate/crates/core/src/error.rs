use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at offset {offset}: expected {expected}, found {found}")]
    Syntax {
        offset: usize,
        expected: String,
        found: String,
    },

    #[error("unknown atom `{0}` (signature is sealed)")]
    UnknownAtom(String),

    #[error("atom `{0}` is not part of the world's signature")]
    AtomNotInWorld(String),

    #[error("duplicate atom `{0}` in signature")]
    DuplicateAtom(String),

    #[error("invalid atom name `{0}`")]
    InvalidAtomName(String),

    #[error("signature has {count} atoms, exceeding the enumeration limit of {limit}")]
    TooManyAtoms { count: usize, limit: usize },

    #[error("world space mismatch: {0}")]
    SpaceMismatch(String),

    #[error("invalid probability `{0}`")]
    InvalidProbability(String),

    #[error("distribution is not normalized (sum = {0})")]
    NotNormalized(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid preference relation: {0}")]
    InvalidPreference(String),

    #[error("prior is not order-preserving: {0}")]
    NotOrderPreserving(String),

    #[error("every maximally satisfying world has zero prior mass")]
    ZeroMassSupport,

    #[error("missing column `{0}`")]
    MissingColumn(String),

    #[error("unknown column `{0}`")]
    UnknownColumn(String),

    #[error("malformed row {row}: {reason}")]
    MalformedRow { row: usize, reason: String },

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("dataset has {0} rows, at least 5 are needed for a split")]
    DatasetTooSmall(usize),

    #[error("invalid split configuration: {0}")]
    InvalidSplit(String),

    #[error("noise grid is empty")]
    EmptyGrid,

    #[error("invalid schema: {0}")]
    Schema(String),

    #[error("unsupported model file version {0}")]
    ModelVersion(u32),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Toml(#[from] toml::de::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub(crate) fn read_to_string(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}
