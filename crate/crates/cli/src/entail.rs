use std::path::{Path, PathBuf};

use bayesent_core::consequence::{
    classical_verdict, limit_map_estimates, map_entails_wrt_prior, maximal_models, paraconsistent_entails,
    preferential_entails, prior_from_preference, RankWeighting,
};
use bayesent_core::logic::{max_support_worlds, models, satisfied_count};
use bayesent_core::model::{atoms_header, map_entails, map_estimates, predictive};
use bayesent_core::prob::{parse_probability, rational_from_f64};
use bayesent_core::{
    parse_formula, Exact, Formula, KnowledgeBase, LogicalModel, NoiseParam, PossibleWorld, PreferentialStructure, Prob,
    Signature, Threshold, WorldDistribution, WorldSpace,
};
use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::failure::{read, to_json, usage, Failure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Classical,
    Bayesian,
    Paraconsistent,
    Map,
    Preferential,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Classical => "classical",
            Mode::Bayesian => "bayesian",
            Mode::Paraconsistent => "paraconsistent",
            Mode::Map => "map",
            Mode::Preferential => "preferential",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArithmeticArg {
    Exact,
    Float,
}

/// Premise and signature flags shared by `entail` and `worlds`.
#[derive(Args, Default)]
pub struct KbArgs {
    /// Premises, one formula per value.
    #[arg(long, num_args = 1..)]
    kb: Vec<String>,
    /// File with one premise per line (`#` comments).
    #[arg(long)]
    kb_file: Option<PathBuf>,
    /// Atom order, comma separated. Fixes the world indexing.
    #[arg(long, value_delimiter = ',')]
    atoms: Vec<String>,
}

#[derive(Args)]
pub struct EntailArgs {
    /// Consequence relation. Required, here or in --config.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    #[command(flatten)]
    kb: KbArgs,
    /// Conclusion to test.
    #[arg(long)]
    query: Option<String>,
    /// Threshold in [0, 1] (`0.6`, `3/5`). Default 1.
    #[arg(long)]
    theta: Option<String>,
    /// Noise parameter in [0, 1]. Default 1.
    #[arg(long)]
    mu: Option<String>,
    /// Prior CSV (`world,phi`). Default uniform.
    #[arg(long)]
    prior: Option<PathBuf>,
    /// Preference edge list (`w_i > w_j` per line).
    #[arg(long)]
    pref: Option<PathBuf>,
    /// Exact rationals (default) or floating point.
    #[arg(long, value_enum)]
    arithmetic: Option<ArithmeticArg>,
    /// TOML file supplying defaults for any of the flags above.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
pub struct WorldsArgs {
    #[command(flatten)]
    kb: KbArgs,
}

/// Numbers in a config file may be TOML numbers or strings such as `"3/5"`.
#[derive(Deserialize)]
#[serde(untagged)]
enum Number {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Number {
    fn into_text(self) -> Result<String, Failure> {
        Ok(match self {
            Number::Int(i) => i.to_string(),
            Number::Float(x) => rational_from_f64(x)?.render(),
            Number::Text(s) => s,
        })
    }
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct EntailConfig {
    mode: Option<Mode>,
    kb: Option<Vec<String>>,
    kb_file: Option<PathBuf>,
    query: Option<String>,
    theta: Option<Number>,
    mu: Option<Number>,
    prior: Option<PathBuf>,
    pref: Option<PathBuf>,
    atoms: Option<Vec<String>>,
    arithmetic: Option<ArithmeticArg>,
}

/// Fills unset flags from `--config`. Paths in the file are relative to it.
fn merge_config(mut a: EntailArgs) -> Result<EntailArgs, Failure> {
    let Some(path) = a.config.take() else {
        return Ok(a);
    };
    let cfg: EntailConfig =
        toml::from_str(&read(&path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let base = path.parent().unwrap_or(Path::new("."));
    let rel = |p: PathBuf| if p.is_absolute() { p } else { base.join(p) };
    a.mode = a.mode.or(cfg.mode);
    if a.kb.kb.is_empty() {
        a.kb.kb = cfg.kb.unwrap_or_default();
    }
    a.kb.kb_file = a.kb.kb_file.or(cfg.kb_file.map(rel));
    if a.kb.atoms.is_empty() {
        a.kb.atoms = cfg.atoms.unwrap_or_default();
    }
    a.query = a.query.or(cfg.query);
    if a.theta.is_none() {
        a.theta = cfg.theta.map(Number::into_text).transpose()?;
    }
    if a.mu.is_none() {
        a.mu = cfg.mu.map(Number::into_text).transpose()?;
    }
    a.prior = a.prior.or(cfg.prior.map(rel));
    a.pref = a.pref.or(cfg.pref.map(rel));
    a.arithmetic = a.arithmetic.or(cfg.arithmetic);
    Ok(a)
}

/// Parsed premises and query over a fixed world space.
struct Problem {
    space: WorldSpace,
    kb: KnowledgeBase,
    query: Option<Formula>,
}

/// Atom order comes from `--atoms`, else a `# atoms:` header in the prior
/// or preference file, else first appearance in the premises and query.
fn build_problem(
    kb_args: &KbArgs,
    query: Option<&str>,
    headers: &[(&Path, Option<Vec<String>>)],
) -> Result<Problem, Failure> {
    let mut declared: Option<(String, Vec<String>)> = None;
    if !kb_args.atoms.is_empty() {
        declared = Some(("--atoms".into(), kb_args.atoms.clone()));
    }
    for (path, header) in headers {
        let Some(h) = header else { continue };
        match &declared {
            Some((source, atoms)) if atoms != h => {
                return Err(Failure::Input(format!(
                    "{} declares atoms [{}] but {source} declares [{}]",
                    path.display(),
                    h.join(" "),
                    atoms.join(" ")
                )));
            }
            Some(_) => {}
            None => declared = Some((path.display().to_string(), h.clone())),
        }
    }
    let mut sig = match &declared {
        Some((_, atoms)) => Signature::sealed(atoms)?,
        None => Signature::extensible(),
    };
    let mut kb = KnowledgeBase::parse_all(&kb_args.kb, &mut sig)?;
    if let Some(path) = &kb_args.kb_file {
        let text = read(path)?;
        let more = KnowledgeBase::parse_text(&text, &mut sig)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        for f in more.iter() {
            kb.push(f.clone());
        }
    }
    let query = query.map(|q| parse_formula(q, &mut sig)).transpose()?;
    let space = WorldSpace::new(sig)?;
    Ok(Problem { space, kb, query })
}

#[derive(Serialize)]
struct EntailOutput {
    mode: Mode,
    arithmetic: ArithmeticArg,
    atoms: Vec<String>,
    premises: Vec<String>,
    query: String,
    holds: bool,
    /// Exact rational (`"3/5"`), a decimal in float mode, `"undefined"`, or
    /// null for relations without a probability.
    probability: Option<String>,
    probability_decimal: Option<f64>,
    theta: Option<String>,
    mu: Option<String>,
    witness: Option<Vec<String>>,
}

fn bitstrings(ws: &[PossibleWorld]) -> Vec<String> {
    ws.iter().map(PossibleWorld::bitstring).collect()
}

fn indices_to_bits(space: &WorldSpace, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| space.world(i).bitstring()).collect()
}

fn parse_param(flag: &str, text: Option<&str>) -> Result<Exact, Failure> {
    let t = text.unwrap_or("1");
    parse_probability(t).map_err(|_| usage(format!("--{flag} must be a probability in [0, 1], got `{t}`")))
}

pub fn entail(args: EntailArgs) -> Result<String, Failure> {
    let args = merge_config(args)?;
    let mode = args.mode.ok_or_else(|| usage("--mode is required"))?;
    let query_text = args.query.as_deref().ok_or_else(|| usage("--query is required"))?;
    let arithmetic = args.arithmetic.unwrap_or(ArithmeticArg::Exact);
    if mode == Mode::Preferential && args.pref.is_none() {
        return Err(usage("--mode preferential needs --pref"));
    }
    let uses_theta = matches!(mode, Mode::Bayesian | Mode::Paraconsistent);
    let uses_mu = matches!(mode, Mode::Bayesian) || (mode == Mode::Map && args.pref.is_none());
    if args.theta.is_some() && !uses_theta {
        return Err(usage(format!("--theta does not apply to --mode {}", mode.name())));
    }
    if args.mu.is_some() && !uses_mu {
        return Err(usage(format!("--mu does not apply to --mode {}", mode.name())));
    }
    let theta = parse_param("theta", args.theta.as_deref())?;
    let mu = parse_param("mu", args.mu.as_deref())?;

    let prior_text = args.prior.as_ref().map(|p| read(p)).transpose()?;
    let pref_text = args.pref.as_ref().map(|p| read(p)).transpose()?;
    let mut headers = Vec::new();
    if let (Some(p), Some(t)) = (&args.prior, &prior_text) {
        headers.push((p.as_path(), atoms_header(t)));
    }
    if let (Some(p), Some(t)) = (&args.pref, &pref_text) {
        headers.push((p.as_path(), atoms_header(t)));
    }
    let problem = build_problem(&args.kb, Some(query_text), &headers)?;
    let space = &problem.space;
    let kb = &problem.kb;
    let query = problem.query.as_ref().expect("query parsed");

    let with_path = |path: &Option<PathBuf>, e: bayesent_core::Error| {
        Failure::Input(format!(
            "{}: {e}",
            path.as_ref().map(|p| p.display().to_string()).unwrap_or_default()
        ))
    };
    let prior: Option<WorldDistribution<Exact>> = match &prior_text {
        Some(t) => Some(WorldDistribution::parse_csv(t, space).map_err(|e| with_path(&args.prior, e))?),
        None => None,
    };
    let pref: Option<PreferentialStructure> = match &pref_text {
        Some(t) => Some(PreferentialStructure::parse(t, space).map_err(|e| with_path(&args.pref, e))?),
        None => None,
    };
    let prior_or_uniform = || {
        prior
            .clone()
            .unwrap_or_else(|| WorldDistribution::uniform(space.clone()))
    };

    let mut out = EntailOutput {
        mode,
        arithmetic,
        atoms: space.signature().atoms().iter().map(|a| a.name().to_string()).collect(),
        premises: kb.iter().map(ToString::to_string).collect(),
        query: query.to_string(),
        holds: false,
        probability: None,
        probability_decimal: None,
        theta: uses_theta.then(|| theta.render()),
        mu: uses_mu.then(|| mu.render()),
        witness: None,
    };

    fn set_probability<P: Prob>(out: &mut EntailOutput, p: &bayesent_core::PredictiveResult<P>) {
        out.probability = Some(p.render());
        out.probability_decimal = p.to_f64();
    }

    match mode {
        Mode::Classical => {
            let v = classical_verdict(kb, query, space)?;
            out.holds = v.holds;
            out.witness = v.witness.as_deref().map(bitstrings);
        }
        Mode::Preferential => {
            let ps = pref.as_ref().expect("checked above");
            out.holds = preferential_entails(kb, query, ps)?;
            out.witness = Some(indices_to_bits(space, &maximal_models(kb, ps)?));
        }
        Mode::Bayesian => {
            let prior = prior_or_uniform();
            match arithmetic {
                ArithmeticArg::Exact => {
                    let m = LogicalModel::new(prior, NoiseParam::new(mu)?);
                    let p = predictive(query, kb, &m)?;
                    out.holds = p.meets(&Threshold::new(theta)?);
                    set_probability(&mut out, &p);
                }
                ArithmeticArg::Float => {
                    let m = LogicalModel::new(prior.to_float(), NoiseParam::new(mu.to_f64())?);
                    let p = predictive(query, kb, &m)?;
                    out.holds = p.meets(&Threshold::new(theta.to_f64())?);
                    set_probability(&mut out, &p);
                }
            }
        }
        Mode::Paraconsistent => {
            let prior = prior_or_uniform();
            let v = match arithmetic {
                ArithmeticArg::Exact => {
                    let v = paraconsistent_entails(kb, query, &Threshold::new(theta)?, &prior)?;
                    set_probability(&mut out, v.probability.as_ref().expect("probability"));
                    (v.holds, v.witness)
                }
                ArithmeticArg::Float => {
                    let v = paraconsistent_entails(kb, query, &Threshold::new(theta.to_f64())?, &prior.to_float())?;
                    set_probability(&mut out, v.probability.as_ref().expect("probability"));
                    (v.holds, v.witness)
                }
            };
            out.holds = v.0;
            out.witness = v.1.as_deref().map(bitstrings);
        }
        Mode::Map => match &pref {
            Some(ps) => {
                let prior = match prior {
                    Some(p) => p,
                    None => prior_from_preference(ps, RankWeighting::default()),
                };
                out.holds = match arithmetic {
                    ArithmeticArg::Exact => map_entails_wrt_prior(kb, query, ps, &prior)?,
                    ArithmeticArg::Float => map_entails_wrt_prior(kb, query, ps, &prior.to_float())?,
                };
                out.witness = Some(indices_to_bits(space, &limit_map_estimates(kb, &prior)?));
            }
            None => {
                let prior = prior_or_uniform();
                let estimates = match arithmetic {
                    ArithmeticArg::Exact => {
                        let m = LogicalModel::new(prior, NoiseParam::new(mu)?);
                        out.holds = map_entails(kb, query, &m)?;
                        map_estimates(kb, &m)?
                    }
                    ArithmeticArg::Float => {
                        let m = LogicalModel::new(prior.to_float(), NoiseParam::new(mu.to_f64())?);
                        out.holds = map_entails(kb, query, &m)?;
                        map_estimates(kb, &m)?
                    }
                };
                out.witness = estimates.map(|e| indices_to_bits(space, &e));
            }
        },
    }
    Ok(to_json(&out))
}

#[derive(Serialize)]
struct WorldsOutput {
    atoms: Vec<String>,
    premises: Vec<String>,
    worlds: usize,
    consistent: bool,
    models: Vec<String>,
    max_satisfied: usize,
    max_support: Vec<String>,
}

pub fn worlds(args: WorldsArgs) -> Result<String, Failure> {
    let problem = build_problem(&args.kb, None, &[])?;
    let space = &problem.space;
    let kb = &problem.kb;
    let models = models(kb, space)?;
    let support = max_support_worlds(kb, space)?;
    let max_satisfied = match support.first() {
        Some(w) => satisfied_count(kb, w)?,
        None => 0,
    };
    Ok(to_json(&WorldsOutput {
        atoms: space.signature().atoms().iter().map(|a| a.name().to_string()).collect(),
        premises: kb.iter().map(ToString::to_string).collect(),
        worlds: space.len(),
        consistent: !models.is_empty(),
        models: bitstrings(&models),
        max_satisfied,
        max_support: bitstrings(&support),
    }))
}
