//! Truth evaluation and model enumeration.

use crate::error::Result;
use crate::logic::formula::{Compiled, Formula};
use crate::logic::kb::KnowledgeBase;
use crate::logic::signature::{PossibleWorld, Signature, WorldSpace};

/// `⟦f⟧_w`: classical truth value of `f` in `w`.
pub fn evaluate(f: &Formula, w: &PossibleWorld) -> Result<bool> {
    Ok(f.compile(w.signature())?.eval(w.bits()))
}

/// Worlds in which every formula of `kb` is true, in index order.
pub fn models(kb: &KnowledgeBase, space: &WorldSpace) -> Result<Vec<PossibleWorld>> {
    let counts = SatisfiedCounts::new(kb, space)?;
    Ok(counts.model_indices().map(|i| space.world(i)).collect())
}

/// `#_w`: how many occurrences in `kb` are true in `w`.
pub fn satisfied_count(kb: &KnowledgeBase, w: &PossibleWorld) -> Result<usize> {
    let compiled = compile_kb(kb, w.signature())?;
    Ok(compiled.iter().filter(|c| c.eval(w.bits())).count())
}

/// Worlds maximising the number of satisfied formulas. Equals
/// [`models`] whenever `kb` is consistent.
pub fn max_support_worlds(kb: &KnowledgeBase, space: &WorldSpace) -> Result<Vec<PossibleWorld>> {
    let counts = SatisfiedCounts::new(kb, space)?;
    Ok(counts.max_support_indices().map(|i| space.world(i)).collect())
}

pub(crate) fn compile_kb(kb: &KnowledgeBase, sig: &Signature) -> Result<Vec<Compiled>> {
    kb.iter().map(|f| f.compile(sig)).collect()
}

/// Truth table of one formula over a space, indexed by world.
pub(crate) fn truth_table(f: &Formula, space: &WorldSpace) -> Result<Vec<bool>> {
    let c = f.compile(space.signature())?;
    Ok((0..space.len() as u64).map(|bits| c.eval(bits)).collect())
}

/// `#_w` for every world of a space, computed once.
#[derive(Debug, Clone)]
pub(crate) struct SatisfiedCounts {
    pub(crate) counts: Vec<usize>,
    pub(crate) size: usize,
}

impl SatisfiedCounts {
    pub(crate) fn new(kb: &KnowledgeBase, space: &WorldSpace) -> Result<Self> {
        let compiled = compile_kb(kb, space.signature())?;
        let counts = (0..space.len() as u64)
            .map(|bits| compiled.iter().filter(|c| c.eval(bits)).count())
            .collect();
        Ok(SatisfiedCounts { counts, size: kb.len() })
    }

    pub(crate) fn max(&self) -> usize {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    pub(crate) fn is_consistent(&self) -> bool {
        self.max() == self.size
    }

    pub(crate) fn model_indices(&self) -> impl Iterator<Item = usize> + '_ {
        let size = self.size;
        self.counts
            .iter()
            .enumerate()
            .filter(move |(_, &c)| c == size)
            .map(|(i, _)| i)
    }

    pub(crate) fn max_support_indices(&self) -> impl Iterator<Item = usize> + '_ {
        let max = self.max();
        self.counts
            .iter()
            .enumerate()
            .filter(move |(_, &c)| c == max)
            .map(|(i, _)| i)
    }
}
