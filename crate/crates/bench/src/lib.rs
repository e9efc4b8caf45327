//! Shared fixtures for the benchmarks.

use bayesent_core::classifier::synthetic::{synthetic_csv, synthetic_schema};
use bayesent_core::classifier::{split, train, DataRow, Dataset, SchemaSpec, SplitConfig, TrainedModel, DEFAULT_GRID};
use bayesent_core::suites::gen;
use bayesent_core::{ExactModel, FloatModel, Formula, KnowledgeBase, NoiseParam, WorldDistribution};
use num_rational::BigRational;

/// A random knowledge base, query and prior over `n` atoms, exact and float.
pub struct LogicFixture {
    pub kb: KnowledgeBase,
    pub query: Formula,
    pub exact: ExactModel,
    pub float: FloatModel,
}

pub fn logic_fixture(n: usize, premises: usize, seed: u64) -> LogicFixture {
    let mut rng = gen::rng(seed);
    let space = gen::space(n);
    let kb: KnowledgeBase = (0..premises).map(|_| gen::formula(&mut rng, &space, 3)).collect();
    let query = gen::formula(&mut rng, &space, 3);
    let prior = gen::prior(&mut rng, &space, 1);
    let mu = BigRational::new(4.into(), 5.into());
    let float = FloatModel::new(prior.to_float(), NoiseParam::new(0.8).unwrap());
    LogicFixture {
        kb,
        query,
        exact: ExactModel::new(prior, NoiseParam::new(mu).unwrap()),
        float,
    }
}

pub fn uniform_exact(n: usize) -> WorldDistribution<BigRational> {
    WorldDistribution::uniform(gen::space(n))
}

/// The Titanic file if present, else a synthetic table of similar size.
pub fn dataset() -> Dataset {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/titanic/train.csv");
    Dataset::load_csv(&path, &SchemaSpec::titanic()).unwrap_or_else(|_| {
        Dataset::from_csv_str(&synthetic_csv(891, 9, 6, 0.6, 0), &synthetic_schema()).expect("synthetic data parses")
    })
}

/// A model trained on split 0 and that split's test rows.
pub fn trained(ds: &Dataset) -> (TrainedModel, Vec<DataRow>) {
    let parts = split(ds.len(), &SplitConfig::default()).expect("dataset large enough");
    let model = train(
        &ds.encoding,
        &ds.select(&parts.train),
        &ds.select(&parts.cv),
        &DEFAULT_GRID,
    )
    .expect("trains");
    (model, ds.select(&parts.test))
}
