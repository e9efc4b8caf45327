//! Reading empirical training worlds as worlds of the propositional model.
//!
//! Each observed `(column, value)` pair becomes an atom `column=code`; a
//! row is the world in which exactly its own atoms are true. The prior puts
//! `multiplicity / |train|` on those worlds and nothing elsewhere, so
//! predictive inference over the full enumeration must reproduce the
//! classifier's two-loop sum.

use super::dataset::Encoding;
use super::model::EmpiricalWorlds;
use crate::error::{Error, Result};
use crate::logic::{Formula, KnowledgeBase, Signature, WorldSpace};
use crate::model::{FloatModel, NoiseParam, WorldDistribution};

#[derive(Debug, Clone)]
pub struct EmbeddedWorlds {
    pub model: FloatModel,
    encoding: Encoding,
}

fn atom_name(column: &str, code: u32) -> String {
    format!("{column}={code}")
}

/// Enumerates the space spanned by every seen category (attributes and
/// goal) and places the empirical masses on it. Limited by the usual atom
/// cap.
pub fn embed_worlds(
    encoding: &Encoding,
    worlds: &EmpiricalWorlds,
    mu: f64,
    atom_limit: usize,
) -> Result<EmbeddedWorlds> {
    let mut names = Vec::new();
    for col in encoding.attributes.iter().chain(std::iter::once(&encoding.goal)) {
        for code in 1..=col.values.len() as u32 {
            names.push(atom_name(&col.name, code));
        }
    }
    let sig = Signature::sealed(&names)?.with_limit(atom_limit);
    let space = WorldSpace::new(sig)?;
    let n = space.width();

    let mut weights = vec![0.0; space.len()];
    for (i, w) in worlds.worlds().iter().enumerate() {
        let mut bits = 0u64;
        let mut offset = 0usize;
        for (col, &code) in encoding.attributes.iter().zip(&w.values) {
            bits |= 1 << (n - 1 - (offset + code as usize - 1));
            offset += col.values.len();
        }
        bits |= 1 << (n - 1 - (offset + w.goal as usize - 1));
        weights[bits as usize] += worlds.mass(i);
    }
    let prior = WorldDistribution::new(space, weights)
        .map_err(|_| Error::InvalidDistribution("training masses do not sum to one".into()))?;
    Ok(EmbeddedWorlds {
        model: FloatModel::new(prior, NoiseParam::new(mu)?),
        encoding: encoding.clone(),
    })
}

impl EmbeddedWorlds {
    /// `Δ` as a knowledge base of attribute atoms. Every code must have been
    /// seen, since unseen categories have no atom.
    pub fn attributes(&self, codes: &[u32]) -> Result<KnowledgeBase> {
        self.encoding
            .attributes
            .iter()
            .zip(codes)
            .map(|(col, &code)| {
                if code == 0 || code as usize > col.values.len() {
                    return Err(Error::UnknownAtom(format!("{}=<unseen>", col.name)));
                }
                Ok(Formula::atom(&atom_name(&col.name, code)))
            })
            .collect()
    }

    pub fn goal(&self, code: u32) -> Formula {
        Formula::atom(&atom_name(&self.encoding.goal.name, code))
    }
}
