use std::collections::BTreeMap;
use std::io::Read;
use std::path::PathBuf;

use bayesent_core::classifier::{
    self, experiment, split, Dataset, ExperimentConfig, Metrics, RowPrediction, SchemaSpec, SplitConfig, Summary,
    TrainedModel, DEFAULT_GRID,
};
use bayesent_core::Threshold;
use clap::{Args, ValueEnum};
use serde::Serialize;

use crate::failure::{to_json, usage, Failure};

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    /// Kaggle Titanic training file: goal `Survived`, id `PassengerId`,
    /// `Name` dropped, age in decades, fare in quartiles.
    Titanic,
}

/// How CSV columns become attributes. Exactly one of `--schema`, `--preset`
/// or `--goal` is needed.
#[derive(Args)]
pub struct SchemaArgs {
    /// TOML schema file.
    #[arg(long)]
    schema: Option<PathBuf>,
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    /// Goal column, for a schema with no binning.
    #[arg(long)]
    goal: Option<String>,
    /// Positive goal value (with --goal). Default `1`.
    #[arg(long)]
    positive: Option<String>,
    /// Row identifier column (with --goal).
    #[arg(long)]
    id: Option<String>,
    /// Additional columns to ignore. Repeatable.
    #[arg(long)]
    drop: Vec<String>,
}

impl SchemaArgs {
    fn resolve(&self) -> Result<SchemaSpec, Failure> {
        let given = [self.schema.is_some(), self.preset.is_some(), self.goal.is_some()];
        if given.iter().filter(|&&g| g).count() != 1 {
            return Err(usage("give exactly one of --schema, --preset, --goal"));
        }
        if self.goal.is_none() && (self.positive.is_some() || self.id.is_some()) {
            return Err(usage("--positive and --id only apply with --goal"));
        }
        let mut spec = if let Some(path) = &self.schema {
            SchemaSpec::load(path)?
        } else if let Some(Preset::Titanic) = self.preset {
            SchemaSpec::titanic()
        } else {
            let mut s = SchemaSpec::new(self.goal.clone().expect("checked"));
            if let Some(p) = &self.positive {
                s.positive = p.clone();
            }
            s.id = self.id.clone();
            s
        };
        for d in &self.drop {
            if !spec.drop.contains(d) {
                spec.drop.push(d.clone());
            }
        }
        spec.validate()?;
        Ok(spec)
    }
}

fn parse_grid(text: Option<&str>) -> Result<Vec<f64>, Failure> {
    let Some(t) = text else {
        return Ok(DEFAULT_GRID.to_vec());
    };
    let grid: Vec<f64> = t
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| usage(format!("--grid expects comma-separated numbers, got `{t}`")))?;
    if grid.is_empty() || grid.iter().any(|m| !(0.0..=1.0).contains(m)) {
        return Err(usage("--grid values must lie in [0, 1]"));
    }
    Ok(grid)
}

#[derive(Args)]
pub struct TrainArgs {
    /// Labelled rows, with a header.
    #[arg(long)]
    csv: PathBuf,
    #[command(flatten)]
    schema: SchemaArgs,
    /// Split seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Candidate μ values, comma separated. Default 0,0.2,0.4,0.6,0.8,1.
    #[arg(long)]
    grid: Option<String>,
    /// Where to write the model.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Serialize)]
struct TrainOutput {
    model: String,
    seed: u64,
    mu_hat: f64,
    grid: Vec<f64>,
    train_rows: usize,
    cv_rows: usize,
    test_rows: usize,
    worlds: usize,
    goal_atom: String,
}

pub fn train(args: TrainArgs) -> Result<String, Failure> {
    let spec = args.schema.resolve()?;
    let grid = parse_grid(args.grid.as_deref())?;
    let ds = Dataset::load_csv(&args.csv, &spec)?;
    let parts = split(ds.len(), &SplitConfig::with_seed(args.seed))?;
    let model = classifier::train(&ds.encoding, &ds.select(&parts.train), &ds.select(&parts.cv), &grid)?;
    model.save(&args.out)?;
    Ok(to_json(&TrainOutput {
        model: args.out.display().to_string(),
        seed: args.seed,
        mu_hat: model.mu_hat,
        grid,
        train_rows: parts.train.len(),
        cv_rows: parts.cv.len(),
        test_rows: parts.test.len(),
        worlds: model.worlds.len(),
        goal_atom: model.encoding.goal_atom(),
    }))
}

#[derive(Args)]
pub struct PredictArgs {
    /// Model file written by `train`.
    #[arg(long)]
    model: PathBuf,
    /// Rows to score; `-` reads standard input.
    #[arg(long)]
    csv: PathBuf,
    /// Verdict threshold on p(goal is positive).
    #[arg(long, default_value_t = 0.5)]
    theta: f64,
}

fn open_rows(model: &TrainedModel, path: &PathBuf, require_goal: bool) -> Result<Vec<classifier::DataRow>, Failure> {
    let rows = if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        model.encoding.read_rows(buf.as_slice(), require_goal)
    } else {
        let file = std::fs::File::open(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        model.encoding.read_rows(file, require_goal)
    };
    rows.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn predictions_csv(rows: &[(String, Option<f64>, bool)]) -> String {
    let mut out = String::from("id,probability,verdict\n");
    for (id, p, v) in rows {
        let p = p.map_or_else(|| "undefined".to_string(), |x| x.to_string());
        let id = if id.contains([',', '"', '\n']) {
            format!("\"{}\"", id.replace('"', "\"\""))
        } else {
            id.clone()
        };
        out.push_str(&format!("{id},{p},{v}\n"));
    }
    out
}

pub fn predict(args: PredictArgs) -> Result<String, Failure> {
    let theta = Threshold::new(args.theta).map_err(|_| usage("--theta must lie in [0, 1]"))?;
    let model = TrainedModel::load(&args.model)?;
    let rows = open_rows(&model, &args.csv, false)?;
    let mut out = Vec::with_capacity(rows.len());
    for r in &rows {
        let (verdict, p) = classifier::predict(&model, &r.values, &theta)?;
        out.push((r.id.clone(), p.to_f64(), verdict));
    }
    Ok(predictions_csv(&out))
}

#[derive(Args)]
pub struct EvaluateArgs {
    /// Labelled rows, with a header.
    #[arg(long)]
    csv: PathBuf,
    /// Evaluate this saved model on every row of --csv. Without it, run the
    /// repeated random-split experiment.
    #[arg(long)]
    model: Option<PathBuf>,
    #[command(flatten)]
    schema: SchemaArgs,
    /// Number of random 60/20/20 splits.
    #[arg(long, default_value_t = 100)]
    splits: usize,
    /// Split `i` uses seed `seed + i`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Candidate μ values, comma separated. Default 0,0.2,0.4,0.6,0.8,1.
    #[arg(long)]
    grid: Option<String>,
    /// Report runtimes as null so that output is reproducible byte for byte.
    #[arg(long)]
    no_timing: bool,
    /// Include every split's outcome.
    #[arg(long)]
    per_split: bool,
    /// With --model, also write per-row predictions as CSV.
    #[arg(long)]
    predictions: Option<PathBuf>,
}

#[derive(Serialize)]
struct ModelMetricsOutput {
    rows: usize,
    mu_hat: f64,
    seed: Option<u64>,
    accuracy: f64,
    auc: Option<f64>,
    runtime_per_prediction_s: Option<f64>,
}

#[derive(Serialize)]
struct SummaryOut {
    mean: Option<f64>,
    std: Option<f64>,
}

impl From<Summary> for SummaryOut {
    fn from(s: Summary) -> Self {
        let finite = |x: f64| x.is_finite().then_some(x);
        SummaryOut {
            mean: finite(s.mean),
            std: finite(s.std),
        }
    }
}

#[derive(Serialize)]
struct SplitOut {
    seed: u64,
    mu_hat: f64,
    accuracy: f64,
    auc: Option<f64>,
    runtime_per_prediction_s: Option<f64>,
    baseline_accuracy: f64,
}

#[derive(Serialize)]
struct ExperimentOutput {
    rows: usize,
    splits: usize,
    seed: u64,
    grid: Vec<f64>,
    accuracy: SummaryOut,
    auc: SummaryOut,
    runtime_per_prediction_s: Option<SummaryOut>,
    baseline_accuracy: SummaryOut,
    mu_hat_counts: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    per_split: Option<Vec<SplitOut>>,
}

pub fn evaluate(args: EvaluateArgs) -> Result<String, Failure> {
    let grid = parse_grid(args.grid.as_deref())?;
    let timing = |m: &Metrics| (!args.no_timing).then_some(m.runtime_per_prediction_s);

    if let Some(model_path) = &args.model {
        let schema_given = args.schema.schema.is_some() || args.schema.preset.is_some() || args.schema.goal.is_some();
        if schema_given || !args.schema.drop.is_empty() {
            return Err(usage(
                "--model carries its own schema; drop --schema/--preset/--goal/--drop",
            ));
        }
        let model = TrainedModel::load(model_path)?;
        let rows = open_rows(&model, &args.csv, true)?;
        let (metrics, preds) = classifier::evaluate(&model, &rows)?;
        if let Some(path) = &args.predictions {
            let triples: Vec<_> = preds
                .iter()
                .map(|p: &RowPrediction| (p.id.clone(), p.probability, p.verdict))
                .collect();
            std::fs::write(path, predictions_csv(&triples))
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        }
        return Ok(to_json(&ModelMetricsOutput {
            rows: rows.len(),
            mu_hat: model.mu_hat,
            seed: None,
            accuracy: metrics.accuracy,
            auc: metrics.auc,
            runtime_per_prediction_s: timing(&metrics),
        }));
    }
    if args.predictions.is_some() {
        return Err(usage("--predictions needs --model"));
    }
    if args.splits == 0 {
        return Err(usage("--splits must be at least 1"));
    }

    let spec = args.schema.resolve()?;
    let ds = Dataset::load_csv(&args.csv, &spec)?;
    let cfg = ExperimentConfig {
        splits: args.splits,
        seed: args.seed,
        grid: grid.clone(),
        ..ExperimentConfig::default()
    };
    let report = experiment(&ds, &cfg)?;
    let per_split = args.per_split.then(|| {
        report
            .splits
            .iter()
            .map(|s| SplitOut {
                seed: s.seed,
                mu_hat: s.mu_hat,
                accuracy: s.metrics.accuracy,
                auc: s.metrics.auc,
                runtime_per_prediction_s: timing(&s.metrics),
                baseline_accuracy: s.baseline_accuracy,
            })
            .collect()
    });
    Ok(to_json(&ExperimentOutput {
        rows: ds.len(),
        splits: args.splits,
        seed: args.seed,
        grid,
        accuracy: report.accuracy.into(),
        auc: report.auc.into(),
        runtime_per_prediction_s: (!args.no_timing).then(|| report.runtime_per_prediction_s.into()),
        baseline_accuracy: report.baseline_accuracy.into(),
        mu_hat_counts: report.mu_hat_counts,
        per_split,
    }))
}
