use std::fmt;

use crate::error::{Error, Result};
use crate::logic::signature::{Atom, Signature};

/// Propositional formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    /// Material implication `a -> b`.
    Implies(Box<Formula>, Box<Formula>),
    /// Mirror of implication: `a <- b` is `b -> a`.
    ImpliedBy(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    /// Panics on an invalid atom name; meant for fixtures and tests.
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(Atom::new(name).expect("valid atom name"))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn implied_by(a: Formula, b: Formula) -> Formula {
        Formula::ImpliedBy(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn negate(&self) -> Formula {
        Formula::not(self.clone())
    }

    /// Atoms in order of first occurrence (left to right), without repeats.
    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out: Vec<&Atom> = Vec::new();
        self.visit_atoms(&mut |a| {
            if !out.contains(&a) {
                out.push(a);
            }
        });
        out
    }

    fn visit_atoms<'a>(&'a self, f: &mut impl FnMut(&'a Atom)) {
        match self {
            Formula::Atom(a) => f(a),
            Formula::Not(x) => x.visit_atoms(f),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::ImpliedBy(a, b)
            | Formula::Iff(a, b) => {
                a.visit_atoms(f);
                b.visit_atoms(f);
            }
        }
    }

    /// Evaluates under a valuation given as a lookup by atom.
    pub fn eval_with(&self, value: &impl Fn(&Atom) -> bool) -> bool {
        match self {
            Formula::Atom(a) => value(a),
            Formula::Not(x) => !x.eval_with(value),
            Formula::And(a, b) => a.eval_with(value) && b.eval_with(value),
            Formula::Or(a, b) => a.eval_with(value) || b.eval_with(value),
            Formula::Implies(a, b) => !a.eval_with(value) || b.eval_with(value),
            Formula::ImpliedBy(a, b) => a.eval_with(value) || !b.eval_with(value),
            Formula::Iff(a, b) => a.eval_with(value) == b.eval_with(value),
        }
    }

    /// Resolves atoms to bit positions for fast evaluation over a space.
    pub(crate) fn compile(&self, sig: &Signature) -> Result<Compiled> {
        let n = sig.len();
        Ok(match self {
            Formula::Atom(a) => {
                let pos = sig
                    .position(a.name())
                    .ok_or_else(|| Error::AtomNotInWorld(a.name().to_string()))?;
                Compiled::Var((n - 1 - pos) as u32)
            }
            Formula::Not(x) => Compiled::Not(Box::new(x.compile(sig)?)),
            Formula::And(a, b) => Compiled::And(Box::new(a.compile(sig)?), Box::new(b.compile(sig)?)),
            Formula::Or(a, b) => Compiled::Or(Box::new(a.compile(sig)?), Box::new(b.compile(sig)?)),
            Formula::Implies(a, b) => Compiled::Or(
                Box::new(Compiled::Not(Box::new(a.compile(sig)?))),
                Box::new(b.compile(sig)?),
            ),
            Formula::ImpliedBy(a, b) => Compiled::Or(
                Box::new(a.compile(sig)?),
                Box::new(Compiled::Not(Box::new(b.compile(sig)?))),
            ),
            Formula::Iff(a, b) => Compiled::Iff(Box::new(a.compile(sig)?), Box::new(b.compile(sig)?)),
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Atom(_) | Formula::Not(_) => 5,
            Formula::And(..) => 4,
            Formula::Or(..) => 3,
            Formula::Implies(..) | Formula::ImpliedBy(..) => 2,
            Formula::Iff(..) => 1,
        }
    }

    fn write_child(&self, f: &mut fmt::Formatter<'_>, child: &Formula, paren: bool) -> fmt::Result {
        if paren {
            write!(f, "({child})")
        } else {
            write!(f, "{child}")
        }
    }
}

/// ASCII rendering with the minimum parentheses needed for the parser to
/// rebuild the same tree: `&` and `|` associate left, `->`, `<-` and `<->`
/// associate right.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b, op, right_assoc) = match self {
            Formula::Atom(a) => return write!(f, "{a}"),
            Formula::Not(x) => {
                f.write_str("!")?;
                return self.write_child(f, x, x.precedence() < 5);
            }
            Formula::And(a, b) => (a, b, " & ", false),
            Formula::Or(a, b) => (a, b, " | ", false),
            Formula::Implies(a, b) => (a, b, " -> ", true),
            Formula::ImpliedBy(a, b) => (a, b, " <- ", true),
            Formula::Iff(a, b) => (a, b, " <-> ", true),
        };
        let p = self.precedence();
        let (lp, rp) = (a.precedence(), b.precedence());
        let left_paren = lp < p || (lp == p && right_assoc);
        let right_paren = rp < p || (rp == p && !right_assoc);
        self.write_child(f, a, left_paren)?;
        f.write_str(op)?;
        self.write_child(f, b, right_paren)
    }
}

/// Formula with atoms resolved to bit shifts of a world index.
#[derive(Debug, Clone)]
pub(crate) enum Compiled {
    Var(u32),
    Not(Box<Compiled>),
    And(Box<Compiled>, Box<Compiled>),
    Or(Box<Compiled>, Box<Compiled>),
    Iff(Box<Compiled>, Box<Compiled>),
}

impl Compiled {
    pub(crate) fn eval(&self, bits: u64) -> bool {
        match self {
            Compiled::Var(s) => (bits >> s) & 1 == 1,
            Compiled::Not(x) => !x.eval(bits),
            Compiled::And(a, b) => a.eval(bits) && b.eval(bits),
            Compiled::Or(a, b) => a.eval(bits) || b.eval(bits),
            Compiled::Iff(a, b) => a.eval(bits) == b.eval(bits),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Formula {
        Formula::atom("a")
    }
    fn b() -> Formula {
        Formula::atom("b")
    }
    fn c() -> Formula {
        Formula::atom("c")
    }

    #[test]
    fn rendering_uses_minimal_parentheses() {
        let f = Formula::implies(Formula::or(Formula::not(a()), b()), c());
        assert_eq!(f.to_string(), "!a | b -> c");
        let g = Formula::and(a(), Formula::or(b(), c()));
        assert_eq!(g.to_string(), "a & (b | c)");
        let h = Formula::implies(Formula::implies(a(), b()), c());
        assert_eq!(h.to_string(), "(a -> b) -> c");
        let k = Formula::not(Formula::and(a(), b()));
        assert_eq!(k.to_string(), "!(a & b)");
    }

    #[test]
    fn atoms_in_first_occurrence_order() {
        let f = Formula::and(b(), Formula::or(a(), b()));
        let names: Vec<&str> = f.atoms().iter().map(|x| x.name()).collect();
        assert_eq!(names, ["b", "a"]);
    }

    #[test]
    fn implication_and_its_mirror() {
        let imp = Formula::implies(a(), b());
        let rev = Formula::implied_by(b(), a());
        for bits in 0..4u8 {
            let v = |x: &Atom| match x.name() {
                "a" => bits & 2 != 0,
                _ => bits & 1 != 0,
            };
            assert_eq!(imp.eval_with(&v), rev.eval_with(&v));
        }
    }
}
