//! Recursive-descent parser for the formula language.
//!
//! ```text
//! iff     := imp ( "<->" iff )?
//! imp     := or ( ("->" | "<-") imp )?
//! or      := and ( "|" and )*
//! and     := unary ( "&" unary )*
//! unary   := "!" unary | atom | "(" iff ")"
//! ```
//!
//! Unicode connectives `¬ ∧ ∨ → ← ↔` are accepted alongside the ASCII ones,
//! and `~` is an alias for `!`. Error offsets count characters.

use crate::error::{Error, Result};
use crate::logic::formula::Formula;
use crate::logic::signature::{is_atom_char, Signature};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    Implies,
    ImpliedBy,
    Iff,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("atom `{s}`"),
            Tok::Not => "`!`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Implies => "`->`".into(),
            Tok::ImpliedBy => "`<-`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn syntax(offset: usize, expected: &str, found: String) -> Error {
    Error::Syntax {
        offset,
        expected: expected.to_string(),
        found,
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '!' | '~' | '¬' => Tok::Not,
            '&' | '∧' => Tok::And,
            '|' | '∨' => Tok::Or,
            '→' => Tok::Implies,
            '←' => Tok::ImpliedBy,
            '↔' => Tok::Iff,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Tok::Implies
            }
            '<' if chars.get(i + 1) == Some(&'-') => {
                if chars.get(i + 2) == Some(&'>') {
                    i += 2;
                    Tok::Iff
                } else {
                    i += 1;
                    Tok::ImpliedBy
                }
            }
            c if is_atom_char(c) && c != '=' => {
                let mut j = i;
                while j < chars.len() && is_atom_char(chars[j]) {
                    j += 1;
                }
                let name: String = chars[i..j].iter().collect();
                i = j;
                out.push((Tok::Ident(name), start));
                continue;
            }
            other => return Err(syntax(start, "formula", format!("`{other}`"))),
        };
        i += 1;
        out.push((tok, start));
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

struct Parser<'s> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    sig: &'s mut Signature,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn iff(&mut self) -> Result<Formula> {
        let lhs = self.imp()?;
        if *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.iff()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        match self.peek() {
            Tok::Implies => {
                self.bump();
                Ok(Formula::implies(lhs, self.imp()?))
            }
            Tok::ImpliedBy => {
                self.bump();
                Ok(Formula::implied_by(lhs, self.imp()?))
            }
            _ => Ok(lhs),
        }
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        let offset = self.offset();
        match self.bump() {
            Tok::Not => Ok(Formula::not(self.unary()?)),
            Tok::Ident(name) => Ok(Formula::Atom(self.sig.intern(&name)?)),
            Tok::LParen => {
                let inner = self.iff()?;
                let close = self.offset();
                match self.bump() {
                    Tok::RParen => Ok(inner),
                    other => Err(syntax(close, "`)`", other.describe())),
                }
            }
            other => Err(syntax(offset, "atom, `!` or `(`", other.describe())),
        }
    }
}

/// Parses `text` into a formula, registering new atoms in `sig` when it is
/// extensible and failing with [`Error::UnknownAtom`] when it is sealed.
pub fn parse_formula(text: &str, sig: &mut Signature) -> Result<Formula> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, sig };
    let f = p.iff()?;
    let offset = p.offset();
    match p.bump() {
        Tok::End => Ok(f),
        other => Err(syntax(offset, "binary connective or end of input", other.describe())),
    }
}
