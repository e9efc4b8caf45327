//! Propositional language: parsing, evaluation and world enumeration.

mod formula;
mod kb;
mod parser;
mod semantics;
mod signature;

pub use formula::Formula;
pub use kb::KnowledgeBase;
pub use parser::parse_formula;
pub use semantics::{evaluate, max_support_worlds, models, satisfied_count};
pub use signature::{Atom, PossibleWorld, Signature, WorldSpace, DEFAULT_ATOM_LIMIT, HARD_ATOM_LIMIT};

pub(crate) use semantics::{compile_kb, truth_table, SatisfiedCounts};
