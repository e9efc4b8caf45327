//! Acceptance criteria, one PASS/FAIL line each. Runs as a plain binary
//! (`harness = false`) so the lines are always printed; exits non-zero if
//! any criterion fails.
//!
//! The Titanic criterion reads `data/titanic/train.csv`, or the file named
//! by `BAYESENT_TITANIC_CSV`. Without either it falls back to a synthetic
//! dataset.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use bayesent_core::classifier::synthetic::{synthetic_csv, synthetic_schema};
use bayesent_core::classifier::{
    embed_worlds, experiment, fit_worlds, split, train, DataRow, Dataset, ExperimentConfig, SchemaSpec, SplitConfig,
    DEFAULT_GRID,
};
use bayesent_core::consequence::{map_entails_wrt_prior, paraconsistent_predictive, preferential_entails};
use bayesent_core::model::{atoms_header, bayesian_entails, predictive};
use bayesent_core::suites::{self, SuiteReport};
use bayesent_core::{
    parse_formula, ExactModel, KnowledgeBase, NoiseParam, PreferentialStructure, Signature, Threshold,
    WorldDistribution, WorldSpace,
};
use num_rational::BigRational;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn space_from_header(path: &Path) -> Result<(WorldSpace, String), String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let atoms = atoms_header(&text).ok_or("missing atoms header")?;
    let sig = Signature::sealed(&atoms).map_err(|e| e.to_string())?;
    Ok((WorldSpace::new(sig).map_err(|e| e.to_string())?, text))
}

fn rain_example() -> Outcome {
    let start = Instant::now();
    let (space, text) = space_from_header(&root().join("fixtures/table1.csv"))?;
    let prior = WorldDistribution::<BigRational>::parse_csv(&text, &space).map_err(|e| e.to_string())?;
    let m = ExactModel::new(prior, NoiseParam::noiseless());
    let mut sig = space.signature().clone();
    let kb = KnowledgeBase::parse_all(&["wet"], &mut sig).map_err(|e| e.to_string())?;
    let rain = parse_formula("rain", &mut sig).map_err(|e| e.to_string())?;
    let p = predictive(&rain, &kb, &m).map_err(|e| e.to_string())?;
    ensure(p.probability() == Some(&q(3, 5)), || {
        format!("p(rain|wet) = {p}, expected 3/5")
    })?;
    let mut thetas: Vec<BigRational> = (0..=100).map(|k| q(k, 100)).collect();
    thetas.extend([q(3, 5), q(599_999, 1_000_000), q(600_001, 1_000_000)]);
    for theta in thetas {
        let holds =
            bayesian_entails(&kb, &rain, &Threshold::new(theta.clone()).unwrap(), &m).map_err(|e| e.to_string())?;
        ensure(holds == (theta <= q(3, 5)), || format!("θ={theta}: holds={holds}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "p(rain|wet) = 3/5 exactly; threshold sweep agrees; {elapsed:.2?}"
    ))
}

fn contradiction_examples() -> Outcome {
    let space = WorldSpace::over(["a", "b"]).map_err(|e| e.to_string())?;
    let m = ExactModel::new(WorldDistribution::uniform(space.clone()), NoiseParam::noiseless());
    let mut sig = space.signature().clone();
    let a = parse_formula("a", &mut sig).unwrap();
    let cases: [(&[&str], BigRational); 3] = [
        (&["a", "b", "!b"], q(1, 1)),
        (&["a & b", "!b"], q(2, 3)),
        (&["a & b & !b"], q(1, 2)),
    ];
    let mut shown = Vec::new();
    for (premises, want) in cases {
        let kb = KnowledgeBase::parse_all(premises, &mut sig).map_err(|e| e.to_string())?;
        let p = paraconsistent_predictive(&kb, &a, &m.prior).map_err(|e| e.to_string())?;
        ensure(p == want, || format!("p(a|{premises:?}) = {p}, expected {want}"))?;
        shown.push(p.to_string());
    }
    Ok(format!("p(a|·) = {}", shown.join(", ")))
}

fn suite(name: &str, min_cases: usize, limit: Option<Duration>) -> Outcome {
    let start = Instant::now();
    let reports = suites::run(name, 0, None).map_err(|e| e.to_string())?;
    let r: &SuiteReport = &reports[0];
    let elapsed = start.elapsed();
    ensure(r.cases >= min_cases, || format!("only {} cases", r.cases))?;
    ensure(r.passed(), || {
        format!("{} failures, e.g. {}", r.failures, r.examples.join("; "))
    })?;
    if let Some(limit) = limit {
        ensure(elapsed < limit, || format!("took {elapsed:?}"))?;
    }
    let coverage: Vec<String> = r.coverage.iter().map(|(k, v)| format!("{k}={v}")).collect();
    Ok(
        format!("{} cases, 0 failures, {elapsed:.2?} {}", r.cases, coverage.join(" "))
            .trim_end()
            .to_string(),
    )
}

fn diamond_fixture() -> Result<(), String> {
    let (space, prior_text) = space_from_header(&root().join("fixtures/diamond_prior.csv"))?;
    let prior = WorldDistribution::<BigRational>::parse_csv(&prior_text, &space).map_err(|e| e.to_string())?;
    let pref_text = std::fs::read_to_string(root().join("fixtures/diamond.pref")).map_err(|e| e.to_string())?;
    let ps = PreferentialStructure::parse(&pref_text, &space).map_err(|e| e.to_string())?;
    let mut sig = space.signature().clone();
    let kb = KnowledgeBase::parse_all(&["a"], &mut sig).unwrap();
    let not_b = parse_formula("!b", &mut sig).unwrap();
    let pref = preferential_entails(&kb, &not_b, &ps).map_err(|e| e.to_string())?;
    let map = map_entails_wrt_prior(&kb, &not_b, &ps, &prior).map_err(|e| e.to_string())?;
    ensure(!pref && map, || format!("diamond: preferential={pref} map={map}"))
}

fn nonmonotonicity() -> Outcome {
    let summary = suite("nonmonotonicity", 500, None)?;
    diamond_fixture()?;
    Ok(format!("{summary}; diamond fixture: MAP yes, preferential no"))
}

/// Two loops over raw training rows, as in the model's definition.
fn brute_force(train: &[DataRow], attrs: &[u32], target: u32, mu: f64) -> Option<f64> {
    let (mut num, mut den) = (0.0, 0.0);
    for row in train {
        let mut joint = 1.0 / train.len() as f64;
        for (a, v) in attrs.iter().zip(&row.values) {
            joint *= if a == v { mu } else { 1.0 - mu };
        }
        num += joint * if row.goal == target { mu } else { 1.0 - mu };
        den += joint;
    }
    (den > 0.0).then(|| num / den)
}

/// Every row of split 0's test set agrees with the brute-force sum, verdict
/// and probability.
fn oracle_agrees(ds: &Dataset) -> Result<usize, String> {
    let parts = split(ds.len(), &SplitConfig::with_seed(0)).map_err(|e| e.to_string())?;
    let tr = ds.select(&parts.train);
    let model = train(&ds.encoding, &tr, &ds.select(&parts.cv), &DEFAULT_GRID).map_err(|e| e.to_string())?;
    let pos = model.positive_code();
    let test = ds.select(&parts.test);
    for row in &test {
        let got = model.probability(&row.values).map_err(|e| e.to_string())?.to_f64();
        let want = brute_force(&tr, &row.values, pos, model.mu_hat);
        let same = match (got, want) {
            (Some(g), Some(w)) => (g - w).abs() < 1e-12 && (g >= 0.5) == (w >= 0.5),
            (g, w) => g == w,
        };
        ensure(same, || format!("row {}: predict {got:?}, oracle {want:?}", row.id))?;
    }
    Ok(test.len())
}

fn titanic() -> Outcome {
    let path = std::env::var_os("BAYESENT_TITANIC_CSV")
        .map(PathBuf::from)
        .unwrap_or_else(|| root().join("data/titanic/train.csv"));
    let start = Instant::now();
    let cfg = ExperimentConfig::default();
    if !path.exists() {
        let ds =
            Dataset::from_csv_str(&synthetic_csv(900, 6, 3, 0.7, 0), &synthetic_schema()).map_err(|e| e.to_string())?;
        let report = experiment(&ds, &cfg).map_err(|e| e.to_string())?;
        let checked = oracle_agrees(&ds)?;
        let (acc, base) = (report.accuracy.mean, report.baseline_accuracy.mean);
        ensure(acc > base, || {
            format!("accuracy {acc:.3} does not beat baseline {base:.3}")
        })?;
        return Ok(format!(
            "{} not found; synthetic fallback: accuracy {acc:.3} > baseline {base:.3}, oracle agrees on {checked} rows",
            path.display()
        ));
    }
    let ds = Dataset::load_csv(&path, &SchemaSpec::titanic()).map_err(|e| e.to_string())?;
    ensure(ds.len() == 891, || format!("expected 891 rows, found {}", ds.len()))?;
    let report = experiment(&ds, &cfg).map_err(|e| e.to_string())?;
    let checked = oracle_agrees(&ds)?;
    let elapsed = start.elapsed();
    let (acc, auc, rt) = (report.accuracy, report.auc, report.runtime_per_prediction_s);
    let line = format!(
        "{} splits: accuracy {:.3} ({:.3}), AUC {:.3} ({:.3}), {:.1e} s/prediction, baseline {:.3}, oracle agrees on {checked} rows, {elapsed:.1?}",
        cfg.splits, acc.mean, acc.std, auc.mean, auc.std, rt.mean, report.baseline_accuracy.mean
    );
    ensure(cfg.splits == 100 && report.splits.len() == 100, || {
        "expected 100 splits".into()
    })?;
    ensure((acc.mean - 0.785).abs() <= 0.03, || {
        format!("accuracy out of band: {line}")
    })?;
    ensure((auc.mean - 0.857).abs() <= 0.03, || format!("AUC out of band: {line}"))?;
    ensure(rt.mean <= 0.004 * 5.0, || format!("runtime out of band: {line}"))?;
    ensure(elapsed < Duration::from_secs(600), || format!("too slow: {line}"))?;
    Ok(line)
}

/// The same experiment with the high-cardinality columns removed, for
/// reference only.
fn titanic_without_opaque_columns() -> Option<String> {
    let path = root().join("data/titanic/train.csv");
    let mut spec = SchemaSpec::titanic();
    spec.drop.extend(["Ticket".to_string(), "Cabin".to_string()]);
    let ds = Dataset::load_csv(&path, &spec).ok()?;
    let r = experiment(&ds, &ExperimentConfig::default()).ok()?;
    Some(format!(
        "Ticket and Cabin dropped: accuracy {:.3} ({:.3}), AUC {:.3} ({:.3})",
        r.accuracy.mean, r.accuracy.std, r.auc.mean, r.auc.std
    ))
}

fn cross_module() -> Outcome {
    let mut compared = 0;
    let mut worst: f64 = 0.0;
    for seed in 0..5 {
        // 3 binary attributes plus a binary goal: 8 atoms.
        let ds = Dataset::from_csv_str(&synthetic_csv(40, 3, 2, 0.7, seed), &synthetic_schema())
            .map_err(|e| e.to_string())?;
        let worlds = fit_worlds(&ds.rows).map_err(|e| e.to_string())?;
        for mu in DEFAULT_GRID.iter().copied().chain([0.5, 0.33, 0.9]) {
            let emb = embed_worlds(&ds.encoding, &worlds, mu, 10).map_err(|e| e.to_string())?;
            ensure(emb.model.space().width() <= 10, || "too many atoms".into())?;
            for row in &ds.rows {
                let kb = emb.attributes(&row.values).map_err(|e| e.to_string())?;
                for target in 1..=ds.encoding.goal.values.len() as u32 {
                    let generative = predictive(&emb.goal(target), &kb, &emb.model)
                        .map_err(|e| e.to_string())?
                        .to_f64();
                    let classifier = worlds.predictive(&row.values, target, mu).to_f64();
                    match (generative, classifier) {
                        (Some(g), Some(c)) => {
                            worst = worst.max((g - c).abs());
                            ensure((g - c).abs() <= 1e-12, || format!("μ={mu} row {}: {g} vs {c}", row.id))?;
                        }
                        (g, c) => ensure(g == c, || format!("μ={mu} row {}: {g:?} vs {c:?}", row.id))?,
                    }
                    compared += 1;
                }
            }
        }
    }
    Ok(format!("{compared} comparisons, max |Δ| = {worst:.1e}"))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("1 rain example", Box::new(rain_example)),
        ("2 contradictory premises", Box::new(contradiction_examples)),
        (
            "3 classicality",
            Box::new(|| suite("classicality", 1000, Some(Duration::from_secs(30)))),
        ),
        ("4 inconsistency", Box::new(|| suite("inconsistency", 1, None))),
        ("5 kolmogorov", Box::new(|| suite("kolmogorov", 1000, None))),
        ("6 paraconsistency", Box::new(|| suite("paraconsistency", 1, None))),
        ("7 nonmonotonicity", Box::new(nonmonotonicity)),
        ("8 threshold monotonicity", Box::new(|| suite("threshold", 1, None))),
        ("9 titanic", Box::new(titanic)),
        ("10 cross-module", Box::new(cross_module)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        match run() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    if let Some(info) = titanic_without_opaque_columns() {
        println!("INFO titanic: {info}");
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
