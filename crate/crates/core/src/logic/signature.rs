//! Atoms, signatures and the enumerated space of possible worlds.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of atoms for exact enumeration (2^20 worlds).
pub const DEFAULT_ATOM_LIMIT: usize = 20;

/// Worlds are indexed by a `u64` bitmask; past this nothing is enumerable anyway.
pub const HARD_ATOM_LIMIT: usize = 30;

/// A propositional symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Atom(String);

impl Atom {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if name.is_empty() || !name.chars().all(is_atom_char) || name.starts_with('=') {
            return Err(Error::InvalidAtomName(name));
        }
        Ok(Atom(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Characters allowed inside an atom name. `=` and `?` let the classifier
/// name atoms `Attr=value` and `Attr=?`.
pub(crate) fn is_atom_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '=' | '.' | '?' | '\'')
}

/// Ordered atom list. The order fixes world indexing.
#[derive(Debug, Clone)]
pub struct Signature {
    atoms: Vec<Atom>,
    index: HashMap<String, usize>,
    extensible: bool,
    limit: usize,
}

impl Signature {
    /// A signature that accepts new atoms while parsing.
    pub fn extensible() -> Self {
        Signature {
            atoms: Vec::new(),
            index: HashMap::new(),
            extensible: true,
            limit: DEFAULT_ATOM_LIMIT,
        }
    }

    /// A sealed signature over the given atom names, in order.
    pub fn sealed<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut sig = Signature::extensible();
        for name in names {
            let name = name.into();
            if sig.index.contains_key(&name) {
                return Err(Error::DuplicateAtom(name));
            }
            sig.intern(&name)?;
        }
        sig.extensible = false;
        Ok(sig)
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = limit.min(HARD_ATOM_LIMIT);
        self
    }

    pub fn seal(&mut self) {
        self.extensible = false;
    }

    pub fn is_extensible(&self) -> bool {
        self.extensible
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// Looks the atom up, registering it if the signature is extensible.
    pub fn intern(&mut self, name: &str) -> Result<Atom> {
        if let Some(&i) = self.index.get(name) {
            return Ok(self.atoms[i].clone());
        }
        if !self.extensible {
            return Err(Error::UnknownAtom(name.to_string()));
        }
        let atom = Atom::new(name)?;
        self.index.insert(name.to_string(), self.atoms.len());
        self.atoms.push(atom.clone());
        Ok(atom)
    }
}

impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        self.atoms == other.atoms
    }
}

impl Eq for Signature {}

/// All `2^n` truth assignments over a sealed signature.
///
/// World `i` assigns atom `k` (0-based, in signature order) the bit
/// `n - 1 - k` of `i`: big-endian binary counting over the atom order, so
/// for atoms `(rain, wet)` the worlds are `00, 01, 10, 11`.
#[derive(Debug, Clone)]
pub struct WorldSpace {
    signature: Arc<Signature>,
}

impl WorldSpace {
    pub fn new(mut signature: Signature) -> Result<Self> {
        signature.seal();
        if signature.len() > signature.limit {
            return Err(Error::TooManyAtoms {
                count: signature.len(),
                limit: signature.limit,
            });
        }
        Ok(WorldSpace {
            signature: Arc::new(signature),
        })
    }

    /// Convenience: a sealed space over the given atom names.
    pub fn over<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        WorldSpace::new(Signature::sealed(names)?)
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn width(&self) -> usize {
        self.signature.len()
    }

    pub fn len(&self) -> usize {
        1usize << self.signature.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn world(&self, index: usize) -> PossibleWorld {
        assert!(index < self.len(), "world index {index} out of range");
        PossibleWorld {
            signature: Arc::clone(&self.signature),
            bits: index as u64,
        }
    }

    pub fn worlds(&self) -> impl Iterator<Item = PossibleWorld> + '_ {
        (0..self.len()).map(move |i| self.world(i))
    }

    /// Parses a bitstring such as `"01"` (one character per atom, in order).
    pub fn parse_world(&self, bits: &str) -> Result<PossibleWorld> {
        let bits = bits.trim();
        if bits.chars().count() != self.width() {
            return Err(Error::SpaceMismatch(format!(
                "world `{bits}` has {} digits, signature has {} atoms",
                bits.chars().count(),
                self.width()
            )));
        }
        let mut index = 0u64;
        for c in bits.chars() {
            index <<= 1;
            match c {
                '0' => {}
                '1' => index |= 1,
                _ => return Err(Error::SpaceMismatch(format!("world `{bits}` is not a bitstring"))),
            }
        }
        Ok(self.world(index as usize))
    }

    pub(crate) fn same_as(&self, other: &WorldSpace) -> bool {
        Arc::ptr_eq(&self.signature, &other.signature) || self.signature == other.signature
    }

    pub(crate) fn check_same(&self, other: &WorldSpace) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::SpaceMismatch(
                "objects are defined over different signatures".into(),
            ))
        }
    }
}

impl PartialEq for WorldSpace {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

/// A total truth assignment over a signature.
#[derive(Debug, Clone)]
pub struct PossibleWorld {
    signature: Arc<Signature>,
    bits: u64,
}

impl PossibleWorld {
    pub fn index(&self) -> usize {
        self.bits as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    /// Truth value of the atom at signature position `pos`.
    pub fn value_at(&self, pos: usize) -> bool {
        let n = self.signature.len();
        (self.bits >> (n - 1 - pos)) & 1 == 1
    }

    pub fn value(&self, atom: &str) -> Result<bool> {
        self.signature
            .position(atom)
            .map(|p| self.value_at(p))
            .ok_or_else(|| Error::AtomNotInWorld(atom.to_string()))
    }

    /// Bitstring over the atom order, e.g. `"01"`.
    pub fn bitstring(&self) -> String {
        (0..self.signature.len())
            .map(|p| if self.value_at(p) { '1' } else { '0' })
            .collect()
    }

    /// `(atom, value)` pairs in signature order.
    pub fn assignment(&self) -> impl Iterator<Item = (&Atom, bool)> {
        self.signature
            .atoms()
            .iter()
            .enumerate()
            .map(|(p, a)| (a, self.value_at(p)))
    }
}

impl PartialEq for PossibleWorld {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits && *self.signature == *other.signature
    }
}

impl Eq for PossibleWorld {}

impl std::hash::Hash for PossibleWorld {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

impl fmt::Display for PossibleWorld {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.bitstring())
    }
}
