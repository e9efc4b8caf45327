use bayesent_bench::{dataset, trained};
use bayesent_core::classifier::{evaluate, fit_worlds, run_split, select_mu, SplitConfig, DEFAULT_GRID};
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn prediction(c: &mut Criterion) {
    let ds = dataset();
    let (model, test) = trained(&ds);
    let row = &test[0].values;
    c.bench_function("classifier/probability", |b| {
        b.iter(|| model.probability(black_box(row)).unwrap())
    });
    c.bench_function("classifier/evaluate_test_set", |b| {
        b.iter(|| evaluate(&model, black_box(&test)).unwrap())
    });
}

fn training(c: &mut Criterion) {
    let ds = dataset();
    c.bench_function("classifier/fit_and_select", |b| {
        b.iter(|| {
            let worlds = fit_worlds(black_box(&ds.rows[..534])).unwrap();
            select_mu(&worlds, &ds.rows[534..712], &DEFAULT_GRID).unwrap()
        })
    });
    c.bench_function("classifier/one_split", |b| {
        b.iter(|| run_split(&ds, &SplitConfig::with_seed(black_box(3)), &DEFAULT_GRID).unwrap())
    });
}

criterion_group!(benches, prediction, training);
criterion_main!(benches);
