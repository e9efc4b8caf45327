//! Randomized invariant checks.
//!
//! Each suite draws small random instances from a seeded ChaCha stream and
//! checks an identity or containment exactly (rational arithmetic). The same
//! entry points back the test suite and the `check` command.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::consequence::{
    bayesian_classical_verdict, classical_entails, map_entails_wrt, map_entails_wrt_prior, paraconsistent_entails,
    paraconsistent_predictive, preferential_entails, PreferentialStructure,
};
use crate::error::{Error, Result};
use crate::logic::{Formula, KnowledgeBase, SatisfiedCounts, WorldSpace};
use crate::model::{
    bayesian_entails, marginal, predictive, truth_probability, ExactModel, NoiseParam, PredictiveResult, Threshold,
    WorldDistribution,
};

/// Names accepted by [`run`], in the order `all` runs them.
pub const SUITES: [&str; 6] = [
    "classicality",
    "inconsistency",
    "kolmogorov",
    "paraconsistency",
    "nonmonotonicity",
    "threshold",
];

const MAX_RECORDED: usize = 10;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub seed: u64,
    pub cases: usize,
    pub failures: usize,
    /// The first few failing instances.
    pub examples: Vec<String>,
    /// Counters describing what the random draws covered.
    pub coverage: BTreeMap<String, usize>,
}

impl SuiteReport {
    fn new(name: &str, seed: u64) -> Self {
        SuiteReport {
            name: name.to_string(),
            seed,
            cases: 0,
            failures: 0,
            examples: Vec::new(),
            coverage: BTreeMap::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        if !ok {
            self.failures += 1;
            if self.examples.len() < MAX_RECORDED {
                self.examples.push(describe());
            }
        }
    }

    fn count(&mut self, label: &str) {
        *self.coverage.entry(label.to_string()).or_default() += 1;
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {} ({} cases, {} failures)",
            self.name, self.cases, self.failures
        )?;
        for (label, n) in &self.coverage {
            write!(f, " {label}={n}")?;
        }
        for e in &self.examples {
            write!(f, "\n  {e}")?;
        }
        Ok(())
    }
}

/// Runs the named suite (or every suite for `"all"`). `cases` overrides the
/// default instance count.
pub fn run(name: &str, seed: u64, cases: Option<usize>) -> Result<Vec<SuiteReport>> {
    if name == "all" {
        return SUITES.iter().map(|s| run_one(s, seed, cases)).collect();
    }
    Ok(vec![run_one(name, seed, cases)?])
}

fn run_one(name: &str, seed: u64, cases: Option<usize>) -> Result<SuiteReport> {
    match name {
        "classicality" => classicality(seed, cases.unwrap_or(1000)),
        "inconsistency" => inconsistency(seed, cases.unwrap_or(500)),
        "kolmogorov" => kolmogorov(seed, cases.unwrap_or(1000)),
        "paraconsistency" => paraconsistency(seed, cases.unwrap_or(500)),
        "nonmonotonicity" => nonmonotonicity(seed, cases.unwrap_or(500)),
        "threshold" => threshold(seed, cases.unwrap_or(500)),
        other => Err(Error::Schema(format!(
            "unknown suite `{other}` (expected one of {}, all)",
            SUITES.join(", ")
        ))),
    }
}

/// Random instance generators.
pub mod gen {
    use super::*;

    pub const ATOM_NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

    pub fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    /// Space over the first `n` of [`ATOM_NAMES`].
    pub fn space(n: usize) -> WorldSpace {
        WorldSpace::over(ATOM_NAMES[..n].iter().copied()).expect("small space")
    }

    pub fn formula(rng: &mut impl Rng, space: &WorldSpace, depth: usize) -> Formula {
        let atoms = space.signature().atoms();
        if depth == 0 || rng.random_bool(0.3) {
            return Formula::atom(atoms[rng.random_range(0..atoms.len())].name());
        }
        let op = rng.random_range(0..6);
        let mut sub = || formula(rng, space, depth - 1);
        match op {
            0 => Formula::not(sub()),
            1 => Formula::and(sub(), sub()),
            2 => Formula::or(sub(), sub()),
            3 => Formula::implies(sub(), sub()),
            4 => Formula::implied_by(sub(), sub()),
            _ => Formula::iff(sub(), sub()),
        }
    }

    pub fn kb(rng: &mut impl Rng, space: &WorldSpace, max_len: usize) -> KnowledgeBase {
        let n = rng.random_range(0..=max_len);
        (0..n).map(|_| formula(rng, space, 3)).collect()
    }

    /// Exact prior with integer weights in `lo..=9`; at least one weight is
    /// positive.
    pub fn prior(rng: &mut impl Rng, space: &WorldSpace, lo: u32) -> WorldDistribution<BigRational> {
        loop {
            let w: Vec<BigRational> = (0..space.len())
                .map(|_| BigRational::from_integer(rng.random_range(lo..=9).into()))
                .collect();
            if let Ok(d) = WorldDistribution::from_weights(space.clone(), w) {
                return d;
            }
        }
    }

    /// `k/10` for `k` in `0..=10`.
    pub fn tenth(rng: &mut impl Rng) -> BigRational {
        BigRational::new(rng.random_range(0..=10).into(), 10.into())
    }

    /// Random DAG over the worlds, closed transitively.
    pub fn preference(rng: &mut impl Rng, space: &WorldSpace, density: f64) -> PreferentialStructure {
        let mut order: Vec<usize> = (0..space.len()).collect();
        order.shuffle(rng);
        let mut edges = Vec::new();
        for i in 0..order.len() {
            for j in i + 1..order.len() {
                if rng.random_bool(density) {
                    edges.push((order[i], order[j]));
                }
            }
        }
        PreferentialStructure::from_edges(space.clone(), edges).expect("acyclic by construction")
    }

    pub fn total_order(rng: &mut impl Rng, space: &WorldSpace) -> PreferentialStructure {
        let mut order: Vec<usize> = (0..space.len()).collect();
        order.shuffle(rng);
        PreferentialStructure::total_order(space.clone(), &order).expect("permutation")
    }

    /// A prior that respects `ps` but is otherwise random: random weights
    /// pushed up along `≻` until every preferred world is at least as heavy.
    pub fn order_preserving_prior(rng: &mut impl Rng, ps: &PreferentialStructure) -> WorldDistribution<BigRational> {
        let n = ps.space().len();
        let mut w: Vec<u32> = (0..n).map(|_| rng.random_range(1..=9)).collect();
        // Process worlds from the bottom up (fewest worlds below first).
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by_key(|&i| ps.below_count(i));
        for &a in &idx {
            for b in 0..n {
                if ps.prefers(a, b) && w[a] < w[b] {
                    w[a] = w[b];
                }
            }
        }
        let weights = w.into_iter().map(|x| BigRational::from_integer(x.into())).collect();
        WorldDistribution::from_weights(ps.space().clone(), weights).expect("positive weights")
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn is_consistent(kb: &KnowledgeBase, space: &WorldSpace) -> Result<bool> {
    Ok(SatisfiedCounts::new(kb, space)?.is_consistent())
}

/// Bayesian classical and paraconsistent entailment at `θ = 1` under a
/// uniform prior agree with brute-force classical consequence on consistent
/// premises.
fn classicality(seed: u64, cases: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("classicality", seed);
    let mut rng = gen::rng(seed);
    while r.cases < cases {
        let space = gen::space(rng.random_range(1..=4));
        let kb = gen::kb(&mut rng, &space, 5);
        if !is_consistent(&kb, &space)? {
            continue;
        }
        let f = gen::formula(&mut rng, &space, 3);
        r.cases += 1;
        let oracle = classical_entails(&kb, &f, &space)?;
        r.count(if oracle { "entailed" } else { "not_entailed" });
        let bayes = bayesian_classical_verdict(&kb, &f, &space)?.holds;
        let uniform: WorldDistribution<BigRational> = WorldDistribution::uniform(space.clone());
        let para = paraconsistent_entails(&kb, &f, &Threshold::one(), &uniform)?.holds;
        r.check(bayes == oracle && para == oracle, || {
            format!("Δ={{{kb}}} α={f}: classical={oracle} bayesian={bayes} paraconsistent={para}")
        });
    }
    Ok(r)
}

/// With `{β, ¬β}` among the premises: classical consequence is explosive,
/// Bayesian classical entailment is undefined, and the paraconsistent
/// probability of any `α` is its prior mass.
fn inconsistency(seed: u64, cases: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("inconsistency", seed);
    let mut rng = gen::rng(seed);
    for _ in 0..cases {
        r.cases += 1;
        let space = gen::space(rng.random_range(1..=4));
        let beta = gen::formula(&mut rng, &space, 3);
        let alpha = gen::formula(&mut rng, &space, 3);
        let kb = KnowledgeBase::new(vec![beta.clone(), beta.negate()]);
        let prior = gen::prior(&mut rng, &space, 0);

        let classical = classical_entails(&kb, &alpha, &space)?;
        let bayes = bayesian_classical_verdict(&kb, &alpha, &space)?;
        let undefined = bayes.probability == Some(PredictiveResult::Undefined);
        let para = paraconsistent_predictive(&kb, &alpha, &prior)?;
        let noiseless = ExactModel::new(prior.clone(), NoiseParam::noiseless());
        let prior_mass = marginal(&alpha, &noiseless)?;
        r.check(classical && !bayes.holds && undefined && para == prior_mass, || {
            format!(
                "β={beta} α={alpha}: classical={classical} bayesian={} undefined={undefined} \
                 paraconsistent={} prior={}",
                bayes.holds, para, prior_mass
            )
        });
    }
    Ok(r)
}

/// Truth-value probabilities obey the Kolmogorov axioms, inclusion–exclusion
/// and `p(α=0) = p(¬α=1)` for every `μ` and prior.
fn kolmogorov(seed: u64, cases: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("kolmogorov", seed);
    let mut rng = gen::rng(seed);
    for _ in 0..cases {
        r.cases += 1;
        let space = gen::space(rng.random_range(1..=4));
        let a = gen::formula(&mut rng, &space, 3);
        let b = gen::formula(&mut rng, &space, 3);
        let m = ExactModel::new(gen::prior(&mut rng, &space, 0), NoiseParam::new(gen::tenth(&mut rng))?);
        let or = Formula::or(a.clone(), b.clone());
        let and = Formula::and(a.clone(), b.clone());
        let mut ok = true;
        for i in [false, true] {
            let pa = truth_probability(&a, i, &m)?;
            let pb = truth_probability(&b, i, &m)?;
            let p_or = truth_probability(&or, i, &m)?;
            let p_and = truth_probability(&and, i, &m)?;
            ok &= pa >= BigRational::zero() && pa <= BigRational::one();
            ok &= p_or == pa + pb - p_and;
        }
        let p1 = truth_probability(&a, true, &m)?;
        let p0 = truth_probability(&a, false, &m)?;
        ok &= p1.clone() + p0.clone() == BigRational::one();
        ok &= p0 == truth_probability(&a.negate(), true, &m)?;
        r.check(ok, || format!("α={a} β={b} μ={}", m.mu()));
    }
    Ok(r)
}

/// Non-contradiction, non-triviality and failure of explosion for the
/// paraconsistent relation.
fn paraconsistency(seed: u64, cases: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("paraconsistency", seed);
    let mut rng = gen::rng(seed);
    for _ in 0..cases {
        r.cases += 1;
        let space = gen::space(rng.random_range(1..=4));
        let prior = gen::prior(&mut rng, &space, 1);
        let kb = gen::kb(&mut rng, &space, 5);
        let alpha = gen::formula(&mut rng, &space, 3);
        let beta = gen::formula(&mut rng, &space, 3);

        // p(α|Δ) + p(¬α|Δ) = 1, so no θ > 1/2 admits both.
        let pa = paraconsistent_predictive(&kb, &alpha, &prior)?;
        let pna = paraconsistent_predictive(&kb, &alpha.negate(), &prior)?;
        let theta = Threshold::new(q(rng.random_range(51..=100), 100))?;
        let both = paraconsistent_entails(&kb, &alpha, &theta, &prior)?.holds
            && paraconsistent_entails(&kb, &alpha.negate(), &theta, &prior)?.holds;
        r.check(pa.clone() + pna.clone() == BigRational::one() && !both, || {
            format!("Δ={{{kb}}} α={alpha}: p(α)={pa} p(¬α)={pna}")
        });

        // Some atom is not entailed from nothing under a uniform prior.
        let uniform: WorldDistribution<BigRational> = WorldDistribution::uniform(space.clone());
        let trivial_free = space.signature().atoms().iter().any(|atom| {
            paraconsistent_predictive(&KnowledgeBase::empty(), &Formula::atom(atom.name()), &uniform)
                .map(|p| p == q(1, 2))
                .unwrap_or(false)
        });
        r.check(trivial_free, || format!("no atom at 1/2 over {} atoms", space.width()));

        // p(β | α, ¬α) = p(β).
        let contradiction = KnowledgeBase::new(vec![alpha.clone(), alpha.negate()]);
        let pb = paraconsistent_predictive(&contradiction, &beta, &prior)?;
        let marginal_b = paraconsistent_predictive(&KnowledgeBase::empty(), &beta, &prior)?;
        r.check(pb == marginal_b, || {
            format!("α={alpha} β={beta}: p(β|α,¬α)={pb} p(β)={marginal_b}")
        });
        if !kb.is_empty() && !is_consistent(&kb, &space)? {
            r.count("inconsistent_premises");
        }
    }
    Ok(r)
}

/// Preferential entailment against MAP entailment w.r.t. the same structure.
fn nonmonotonicity(seed: u64, cases: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("nonmonotonicity", seed);
    let mut rng = gen::rng(seed);
    for _ in 0..cases {
        r.cases += 1;
        let space = gen::space(rng.random_range(1..=4));
        let total = rng.random_bool(0.3);
        let ps = if total {
            gen::total_order(&mut rng, &space)
        } else {
            let density = rng.random_range(0.0..0.6);
            gen::preference(&mut rng, &space, density)
        };
        let kb = gen::kb(&mut rng, &space, 4);
        let alpha = gen::formula(&mut rng, &space, 3);
        let pref = preferential_entails(&kb, &alpha, &ps)?;
        let map = map_entails_wrt(&kb, &alpha, &ps)?;
        let custom = gen::order_preserving_prior(&mut rng, &ps);
        let map_custom = map_entails_wrt_prior(&kb, &alpha, &ps, &custom)?;
        let consistent = is_consistent(&kb, &space)?;
        let describe = || {
            format!(
                "Δ={{{kb}}} α={alpha} ≻={:?}: pref={pref} map={map} map'={map_custom}",
                ps.pairs().collect::<Vec<_>>()
            )
        };
        if consistent {
            r.count("consistent");
            r.check(!pref || (map && map_custom), describe);
            if total {
                r.count("total");
                r.check(pref == map, describe);
            }
            if map && !pref {
                r.count("map_only");
            }
        } else {
            r.count("inconsistent");
            r.check(!map || pref, describe);
            r.check(!map_custom || pref, describe);
            if pref && !map {
                r.count("pref_only");
            }
        }
    }

    // The diamond: w1 ≻ w2, w3, w4 and w3, w4 ≻ w2, with worlds
    // ¬a¬b, ¬ab, a¬b, ab.
    r.cases += 1;
    let space = WorldSpace::over(["a", "b"])?;
    let ps = PreferentialStructure::from_edges(space.clone(), [(0, 1), (0, 2), (0, 3), (2, 1), (3, 1)])?;
    let prior = WorldDistribution::new(space.clone(), vec![q(4, 10), q(1, 10), q(3, 10), q(2, 10)])?;
    let mut sig = space.signature().clone();
    let a = KnowledgeBase::parse_all(&["a"], &mut sig)?;
    let a_or_not_b = KnowledgeBase::parse_all(&["a | !b"], &mut sig)?;
    let not_b = crate::logic::parse_formula("!b", &mut sig)?;
    let pref_a = preferential_entails(&a, &not_b, &ps)?;
    let map_a = map_entails_wrt_prior(&a, &not_b, &ps, &prior)?;
    let pref_ab = preferential_entails(&a_or_not_b, &not_b, &ps)?;
    let map_ab = map_entails_wrt_prior(&a_or_not_b, &not_b, &ps, &prior)?;
    r.check(!pref_a && map_a && pref_ab && map_ab, || {
        format!("diamond: pref(a)={pref_a} map(a)={map_a} pref(a|!b)={pref_ab} map(a|!b)={map_ab}")
    });
    Ok(r)
}

/// Raising the threshold never adds consequences.
fn threshold(seed: u64, cases: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("threshold", seed);
    let mut rng = gen::rng(seed);
    for _ in 0..cases {
        r.cases += 1;
        let space = gen::space(rng.random_range(1..=4));
        let prior = gen::prior(&mut rng, &space, 1);
        let m = ExactModel::new(prior.clone(), NoiseParam::new(gen::tenth(&mut rng))?);
        let kb = gen::kb(&mut rng, &space, 4);
        let alpha = gen::formula(&mut rng, &space, 3);
        let mut t = [gen::tenth(&mut rng), gen::tenth(&mut rng)];
        t.sort();
        let [lo, hi] = t;
        let (lo, hi) = (Threshold::new(lo)?, Threshold::new(hi)?);
        let b_hi = bayesian_entails(&kb, &alpha, &hi, &m)?;
        let b_lo = bayesian_entails(&kb, &alpha, &lo, &m)?;
        let p_hi = paraconsistent_entails(&kb, &alpha, &hi, &prior)?.holds;
        let p_lo = paraconsistent_entails(&kb, &alpha, &lo, &prior)?.holds;
        let p = predictive(&alpha, &kb, &m)?;
        r.check((!b_hi || b_lo) && (!p_hi || p_lo), || {
            format!(
                "Δ={{{kb}}} α={alpha} θ=({},{}) p={p}: bayes {b_hi}/{b_lo} para {p_hi}/{p_lo}",
                lo.value(),
                hi.value()
            )
        });
        if !p.is_defined() {
            r.count("undefined");
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass() {
        for report in run("all", 1, Some(60)).unwrap() {
            assert!(report.passed(), "{report}");
            assert!(report.cases >= 60);
        }
    }

    #[test]
    fn unknown_suite() {
        assert!(run("nope", 0, None).is_err());
    }

    #[test]
    fn order_preserving_generator() {
        let mut rng = gen::rng(5);
        for _ in 0..50 {
            let space = gen::space(3);
            let ps = gen::preference(&mut rng, &space, 0.4);
            let prior = gen::order_preserving_prior(&mut rng, &ps);
            assert!(crate::consequence::is_order_preserving(&ps, &prior));
        }
    }
}
