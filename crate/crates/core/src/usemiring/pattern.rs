//! Block expressions over {0, Δ, Δ′}.
//!
//! Text grammar: atoms `0`, `D` (Δ) and `N` (Δ′), each optionally raised
//! to a repetition count `^k`; parenthesised groups, also with `^k`;
//! juxtaposition concatenates. Whitespace is ignored.

use std::fmt;
use std::str::FromStr;

use super::{USym, UVec};
use crate::error::{Error, Result};

/// A block expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pattern {
    /// `sym^count`.
    Atom(USym, usize),
    Concat(Vec<Pattern>),
    /// `(inner)^count`.
    Repeat(Box<Pattern>, usize),
}

impl Pattern {
    pub fn zeros(k: usize) -> Pattern {
        Pattern::Atom(USym::Zero, k)
    }

    pub fn any(k: usize) -> Pattern {
        Pattern::Atom(USym::Any, k)
    }

    pub fn nonzero(k: usize) -> Pattern {
        Pattern::Atom(USym::NonZero, k)
    }

    pub fn concat(parts: impl IntoIterator<Item = Pattern>) -> Pattern {
        Pattern::Concat(parts.into_iter().collect())
    }

    pub fn repeat(self, k: usize) -> Pattern {
        Pattern::Repeat(Box::new(self), k)
    }

    /// Number of symbols in the expansion.
    pub fn len(&self) -> usize {
        match self {
            Pattern::Atom(_, k) => *k,
            Pattern::Concat(v) => v.iter().map(Pattern::len).sum(),
            Pattern::Repeat(p, k) => p.len() * k,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn push_into(&self, out: &mut Vec<USym>) {
        match self {
            Pattern::Atom(s, k) => out.extend(std::iter::repeat(*s).take(*k)),
            Pattern::Concat(v) => v.iter().for_each(|p| p.push_into(out)),
            Pattern::Repeat(p, k) => {
                for _ in 0..*k {
                    p.push_into(out);
                }
            }
        }
    }
}

/// Flattens a pattern into a vector.
pub fn pattern_expand(p: &Pattern) -> Result<UVec> {
    let mut out = Vec::with_capacity(p.len());
    p.push_into(&mut out);
    UVec::new(out).map_err(|_| Error::EmptyPattern)
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Atom(s, 1) => write!(f, "{}", s.to_char()),
            Pattern::Atom(s, k) => write!(f, "({}^{k})", s.to_char()),
            Pattern::Concat(v) => v.iter().try_for_each(|p| write!(f, "{p}")),
            Pattern::Repeat(p, k) => write!(f, "({p})^{k}"),
        }
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in pattern {:?}", self.pos, self.text))
    }

    fn sequence(&mut self) -> Result<Pattern> {
        let mut parts = Vec::new();
        while let Some(c) = self.peek() {
            if c == ')' {
                break;
            }
            parts.push(self.item()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Pattern::Concat(parts) })
    }

    fn item(&mut self) -> Result<Pattern> {
        let c = self.peek().ok_or_else(|| self.err("unexpected end"))?;
        let base = if c == '(' {
            self.pos += 1;
            let inner = self.sequence()?;
            if self.peek() != Some(')') {
                return Err(self.err("missing ')'"));
            }
            self.pos += 1;
            inner
        } else if let Some(sym) = USym::from_char(c) {
            self.pos += 1;
            Pattern::Atom(sym, 1)
        } else {
            return Err(self.err(&format!("unexpected character {c:?}")));
        };
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let start = self.pos;
        while matches!(self.peek(), Some(d) if d.is_ascii_digit()) {
            self.pos += 1;
        }
        let k: usize = self.chars[start..self.pos]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| self.err("expected repetition count"))?;
        Ok(match base {
            Pattern::Atom(sym, 1) => Pattern::Atom(sym, k),
            other => other.repeat(k),
        })
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(text: &str) -> Result<Pattern> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser { chars, pos: 0, text };
        let out = p.sequence()?;
        if p.pos != p.chars.len() {
            return Err(p.err("unbalanced ')'"));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expand(s: &str) -> Result<String> {
        pattern_expand(&s.parse()?).map(|v| v.to_string())
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(expand("(0^3)(D^2)").unwrap(), "000DD");
        assert_eq!(expand("((0^2)(N^3))^2(D^2)").unwrap(), "00NNN00NNNDD");
        assert_eq!(expand("(0^0)"), Err(Error::EmptyPattern));
        assert_eq!(expand("(D^0)(N^0)"), Err(Error::EmptyPattern));
        assert_eq!(expand(" 0 D N^2 ").unwrap(), "0DNN");
        assert_eq!(expand("(0D)^3").unwrap(), "0D0D0D");
        assert_eq!(expand("0^12").unwrap(), "000000000000");
    }

    #[test]
    fn parse_errors() {
        for bad in ["(0", "0)", "X", "0^", "0^a", "()^"] {
            assert!(matches!(bad.parse::<Pattern>(), Err(Error::Parse(_))), "{bad}");
        }
    }

    #[test]
    fn display_round_trip() {
        for s in ["((0^2)(N^3))^2(D^2)", "0DND0", "(0^4)((D)(0^3))^3"] {
            let p: Pattern = s.parse().unwrap();
            let back: Pattern = p.to_string().parse().unwrap();
            assert_eq!(pattern_expand(&p), pattern_expand(&back));
        }
    }

    #[test]
    fn builders_match_text() {
        let p = Pattern::concat([Pattern::zeros(2), Pattern::concat([Pattern::zeros(1), Pattern::any(1)]).repeat(2)]);
        assert_eq!(pattern_expand(&p).unwrap().to_string(), "000D0D");
        assert_eq!(p.len(), 6);
    }
}
