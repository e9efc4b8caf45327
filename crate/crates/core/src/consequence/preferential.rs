//! Preferential structures `(W, ≻)`, order-preserving priors, preferential
//! entailment and MAP entailment with respect to a structure.
//!
//! `w1 ≻ w2` reads "w1 is more normal than w2"; maximal worlds are the most
//! preferred.

use std::collections::BTreeSet;
use std::path::Path;

use num_rational::BigRational;

use crate::error::{read_to_string, Error, Result};
use crate::logic::{truth_table, Formula, KnowledgeBase, SatisfiedCounts, WorldSpace};
use crate::model::{argmax_indices, WorldDistribution};
use crate::prob::Prob;

/// A finite strict partial order over the worlds of a space.
#[derive(Debug, Clone)]
pub struct PreferentialStructure {
    space: WorldSpace,
    /// `below[w]` holds every `v` with `w ≻ v`.
    below: Vec<BTreeSet<usize>>,
}

impl PreferentialStructure {
    /// Takes the relation as given; it must already be irreflexive and
    /// transitive.
    pub fn new(space: WorldSpace, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let below = Self::collect(&space, pairs)?;
        for (w, set) in below.iter().enumerate() {
            if set.contains(&w) {
                return Err(Error::InvalidPreference(format!(
                    "relation is reflexive at {}",
                    space.world(w)
                )));
            }
            for &v in set {
                if let Some(u) = below[v].iter().find(|u| !set.contains(u)) {
                    return Err(Error::InvalidPreference(format!(
                        "not transitive: {} > {} > {} but not {} > {}",
                        space.world(w),
                        space.world(v),
                        space.world(*u),
                        space.world(w),
                        space.world(*u)
                    )));
                }
            }
        }
        Ok(PreferentialStructure { space, below })
    }

    /// Builds the transitive closure of the edges; rejects cycles.
    pub fn from_edges(space: WorldSpace, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut below = Self::collect(&space, edges)?;
        // Warshall over index order.
        let n = space.len();
        for k in 0..n {
            let below_k = below[k].clone();
            for set in below.iter_mut() {
                if set.contains(&k) {
                    set.extend(below_k.iter().copied());
                }
            }
        }
        if let Some(w) = (0..n).find(|&w| below[w].contains(&w)) {
            return Err(Error::InvalidPreference(format!(
                "cycle through world {}",
                space.world(w)
            )));
        }
        Ok(PreferentialStructure { space, below })
    }

    /// The empty relation: every world is maximal.
    pub fn antichain(space: WorldSpace) -> Self {
        let below = vec![BTreeSet::new(); space.len()];
        PreferentialStructure { space, below }
    }

    /// Total order listing worlds from most to least preferred.
    pub fn total_order(space: WorldSpace, order: &[usize]) -> Result<Self> {
        let n = space.len();
        let distinct: BTreeSet<usize> = order.iter().copied().collect();
        if order.len() != n || distinct.len() != n || order.iter().any(|&i| i >= n) {
            return Err(Error::InvalidPreference(
                "a total order must list every world exactly once".into(),
            ));
        }
        let edges = order.windows(2).map(|p| (p[0], p[1]));
        PreferentialStructure::from_edges(space, edges)
    }

    /// Edge-list text: one `w_i > w_j` per line using world bitstrings;
    /// `#` starts a comment. The transitive closure is taken.
    pub fn parse(text: &str, space: &WorldSpace) -> Result<Self> {
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let malformed = |reason: String| Error::MalformedRow {
                row: lineno + 1,
                reason,
            };
            let (a, b) = body
                .split_once('>')
                .ok_or_else(|| malformed(format!("expected `w_i > w_j`, found `{body}`")))?;
            let a = space.parse_world(a).map_err(|e| malformed(e.to_string()))?;
            let b = space.parse_world(b).map_err(|e| malformed(e.to_string()))?;
            edges.push((a.index(), b.index()));
        }
        PreferentialStructure::from_edges(space.clone(), edges)
    }

    pub fn load(path: &Path, space: &WorldSpace) -> Result<Self> {
        PreferentialStructure::parse(&read_to_string(path)?, space)
    }

    fn collect(space: &WorldSpace, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Vec<BTreeSet<usize>>> {
        let n = space.len();
        let mut below = vec![BTreeSet::new(); n];
        for (a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::InvalidPreference(format!(
                    "pair ({a}, {b}) outside a space of {n} worlds"
                )));
            }
            below[a].insert(b);
        }
        Ok(below)
    }

    pub fn space(&self) -> &WorldSpace {
        &self.space
    }

    /// `a ≻ b`.
    pub fn prefers(&self, a: usize, b: usize) -> bool {
        self.below[a].contains(&b)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.below
            .iter()
            .enumerate()
            .flat_map(|(a, set)| set.iter().map(move |&b| (a, b)))
    }

    pub fn below_count(&self, w: usize) -> usize {
        self.below[w].len()
    }

    /// Every pair of distinct worlds is comparable.
    pub fn is_total(&self) -> bool {
        let n = self.space.len();
        (0..n).all(|a| (a + 1..n).all(|b| self.prefers(a, b) || self.prefers(b, a)))
    }

    /// Maximal elements of `set`: no other member is preferred to them.
    pub fn maximal_among(&self, set: &[usize]) -> Vec<usize> {
        set.iter()
            .copied()
            .filter(|&w| !set.iter().any(|&v| self.prefers(v, w)))
            .collect()
    }
}

/// How [`prior_from_preference`] turns the order into weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RankWeighting {
    /// Weight `1 + |{v : w ≻ v}|`. Incomparable worlds may tie.
    #[default]
    BelowCount,
    /// Weights `N, N−1, …, 1` along a linear extension of `≻` (ties in the
    /// below-count broken by world index), so every world gets a distinct
    /// mass and the prior has a unique mode.
    LinearExtension,
}

/// An order-preserving prior: `w1 ≻ w2` implies `φ_1 ≥ φ_2`. Both schemes
/// are in fact strict along every chain.
pub fn prior_from_preference<P: Prob>(ps: &PreferentialStructure, scheme: RankWeighting) -> WorldDistribution<P> {
    let n = ps.space.len();
    let weights: Vec<usize> = match scheme {
        RankWeighting::BelowCount => (0..n).map(|w| 1 + ps.below_count(w)).collect(),
        RankWeighting::LinearExtension => {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&w| (std::cmp::Reverse(ps.below_count(w)), w));
            let mut weights = vec![0; n];
            for (pos, &w) in order.iter().enumerate() {
                weights[w] = n - pos;
            }
            weights
        }
    };
    let total: usize = weights.iter().sum();
    let phi = weights
        .into_iter()
        .map(|w| P::from_rational(&BigRational::new(w.into(), total.into())))
        .collect();
    WorldDistribution::from_parts_unchecked(ps.space.clone(), phi)
}

/// `∀ w1 ≻ w2: φ_1 ≥ φ_2`.
pub fn is_order_preserving<P: Prob>(ps: &PreferentialStructure, prior: &WorldDistribution<P>) -> bool {
    ps.pairs().all(|(a, b)| prior.mass(a) >= prior.mass(b))
}

/// `≻`-maximal models of `kb`, by world index.
pub fn maximal_models(kb: &KnowledgeBase, ps: &PreferentialStructure) -> Result<Vec<usize>> {
    let counts = SatisfiedCounts::new(kb, &ps.space)?;
    let models: Vec<usize> = counts.model_indices().collect();
    Ok(ps.maximal_among(&models))
}

/// `Δ |~ f`: `f` holds in every `≻`-maximal model of `Δ`. Vacuously true
/// when `Δ` has no model.
pub fn preferential_entails(kb: &KnowledgeBase, f: &Formula, ps: &PreferentialStructure) -> Result<bool> {
    let table = truth_table(f, &ps.space)?;
    Ok(maximal_models(kb, ps)?.into_iter().all(|w| table[w]))
}

/// `argmax_w p(w | Δ)` in the `μ → 1` limit: the prior restricted to
/// `((Δ))`. Fails with [`Error::ZeroMassSupport`] if `((Δ))` has no mass.
pub fn limit_map_estimates<P: Prob>(kb: &KnowledgeBase, prior: &WorldDistribution<P>) -> Result<Vec<usize>> {
    let counts = SatisfiedCounts::new(kb, prior.space())?;
    let support: Vec<usize> = counts.max_support_indices().collect();
    let masses: Vec<P> = support.iter().map(|&i| prior.mass(i).clone()).collect();
    if masses.iter().all(|m| m.is_zero()) {
        return Err(Error::ZeroMassSupport);
    }
    Ok(argmax_indices(&masses).into_iter().map(|k| support[k]).collect())
}

/// MAP entailment with respect to `(W, ≻)`, using the default
/// order-preserving prior.
pub fn map_entails_wrt(kb: &KnowledgeBase, f: &Formula, ps: &PreferentialStructure) -> Result<bool> {
    let prior: WorldDistribution<BigRational> = prior_from_preference(ps, RankWeighting::default());
    map_entails_wrt_prior(kb, f, ps, &prior)
}

/// MAP entailment with respect to `(W, ≻)` under a caller-supplied prior,
/// which must be order-preserving.
pub fn map_entails_wrt_prior<P: Prob>(
    kb: &KnowledgeBase,
    f: &Formula,
    ps: &PreferentialStructure,
    prior: &WorldDistribution<P>,
) -> Result<bool> {
    ps.space.check_same(prior.space())?;
    if !is_order_preserving(ps, prior) {
        let (a, b) = ps
            .pairs()
            .find(|&(a, b)| prior.mass(a) < prior.mass(b))
            .expect("violation exists");
        return Err(Error::NotOrderPreserving(format!(
            "{} > {} but φ({}) < φ({})",
            ps.space.world(a),
            ps.space.world(b),
            ps.space.world(a),
            ps.space.world(b)
        )));
    }
    let table = truth_table(f, &ps.space)?;
    Ok(limit_map_estimates(kb, prior)?.into_iter().any(|w| table[w]))
}
