use std::fmt;
use std::path::Path;

use crate::error::{read_to_string, Error, Result};
use crate::logic::formula::Formula;
use crate::logic::parser::parse_formula;
use crate::logic::signature::Signature;

/// A finite multiset of formulas. Duplicates are kept: each occurrence
/// contributes its own likelihood factor.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KnowledgeBase {
    formulas: Vec<Formula>,
}

impl KnowledgeBase {
    pub fn new(formulas: Vec<Formula>) -> Self {
        KnowledgeBase { formulas }
    }

    pub fn empty() -> Self {
        KnowledgeBase::default()
    }

    pub fn push(&mut self, f: Formula) {
        self.formulas.push(f);
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Formula> {
        self.formulas.iter()
    }

    /// `self ∪ {f}` as a multiset.
    pub fn with(&self, f: Formula) -> KnowledgeBase {
        let mut kb = self.clone();
        kb.push(f);
        kb
    }

    /// Parses each string as one formula.
    pub fn parse_all<S: AsRef<str>>(texts: &[S], sig: &mut Signature) -> Result<Self> {
        texts
            .iter()
            .map(|t| parse_formula(t.as_ref(), sig))
            .collect::<Result<Vec<_>>>()
            .map(KnowledgeBase::new)
    }

    /// One formula per line; `#` starts a comment; blank lines are skipped.
    /// Syntax errors report the 1-based line in the `found` field.
    pub fn parse_text(text: &str, sig: &mut Signature) -> Result<Self> {
        let mut kb = KnowledgeBase::empty();
        for (lineno, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let f = parse_formula(body, sig).map_err(|e| match e {
                Error::Syntax {
                    offset,
                    expected,
                    found,
                } => Error::Syntax {
                    offset,
                    expected,
                    found: format!("{found} (line {})", lineno + 1),
                },
                other => other,
            })?;
            kb.push(f);
        }
        Ok(kb)
    }

    pub fn load(path: &Path, sig: &mut Signature) -> Result<Self> {
        KnowledgeBase::parse_text(&read_to_string(path)?, sig)
    }
}

impl FromIterator<Formula> for KnowledgeBase {
    fn from_iter<T: IntoIterator<Item = Formula>>(iter: T) -> Self {
        KnowledgeBase::new(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a KnowledgeBase {
    type Item = &'a Formula;
    type IntoIter = std::slice::Iter<'a, Formula>;

    fn into_iter(self) -> Self::IntoIter {
        self.formulas.iter()
    }
}

impl fmt::Display for KnowledgeBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.formulas.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_format() {
        let text = "# premises\nrain -> wet\n\n  rain   # observed\n";
        let mut sig = Signature::extensible();
        let kb = KnowledgeBase::parse_text(text, &mut sig).unwrap();
        assert_eq!(kb.len(), 2);
        assert_eq!(kb.formulas()[1], Formula::atom("rain"));
        assert_eq!(sig.atoms().len(), 2);
    }

    #[test]
    fn duplicates_are_kept() {
        let mut sig = Signature::extensible();
        let kb = KnowledgeBase::parse_all(&["a", "a"], &mut sig).unwrap();
        assert_eq!(kb.len(), 2);
    }

    #[test]
    fn errors_mention_line() {
        let mut sig = Signature::extensible();
        let err = KnowledgeBase::parse_text("a\nb &\n", &mut sig).unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }
}
