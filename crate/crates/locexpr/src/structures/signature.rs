use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

/// Ordered list of relation symbols. The order is the canonical iteration
/// order everywhere in the crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Signature(Arc<[Symbol]>);

impl Signature {
    pub fn new<S: AsRef<str>>(symbols: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let mut out: Vec<Symbol> = Vec::new();
        for (name, arity) in symbols {
            let name = name.as_ref();
            if arity == 0 {
                return Err(Error::input(format!("symbol {name} has arity 0")));
            }
            if !is_identifier(name) {
                return Err(Error::input(format!("symbol name {name:?} is not an identifier")));
            }
            if out.iter().any(|s| s.name == name) {
                return Err(Error::input(format!("duplicate symbol {name}")));
            }
            out.push(Symbol { name: name.to_string(), arity });
        }
        Ok(Signature(out.into()))
    }

    /// The empty signature.
    pub fn empty() -> Self {
        Signature(Vec::new().into())
    }

    /// `{E/2}`, used for graphs and digraphs alike.
    pub fn graph() -> Self {
        Signature::new([("E", 2)]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn arity(&self, sym: usize) -> usize {
        self.0[sym].arity
    }

    pub fn name(&self, sym: usize) -> &str {
        &self.0[sym].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|s| s.name == name)
    }

    pub fn max_arity(&self) -> usize {
        self.0.iter().map(|s| s.arity).max().unwrap_or(0)
    }

    /// Number of tuple positions of a structure on `n` vertices.
    pub fn positions(&self, n: usize) -> usize {
        self.0
            .iter()
            .map(|s| n.checked_pow(s.arity as u32).unwrap_or(usize::MAX))
            .fold(0usize, |a, b| a.saturating_add(b))
    }

    /// Concatenation; fails on a name clash.
    pub fn concat(&self, other: &Signature) -> Result<Signature> {
        Signature::new(
            self.0
                .iter()
                .chain(other.0.iter())
                .map(|s| (s.name.as_str(), s.arity)),
        )
    }

    /// Same symbols with every name prefixed.
    pub fn prefixed(&self, prefix: &str) -> Signature {
        Signature::new(self.0.iter().map(|s| (format!("{prefix}{}", s.name), s.arity))).unwrap()
    }

    pub(crate) fn expect_eq(&self, other: &Signature, what: &str) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::Signature(format!("{what}: expected {self}, found {other}")))
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}/{}", s.name, s.arity)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_symbols() {
        assert!(Signature::new([("E", 0)]).is_err());
        assert!(Signature::new([("E", 2), ("E", 1)]).is_err());
        assert!(Signature::new([("1E", 2)]).is_err());
    }

    #[test]
    fn positions_and_concat() {
        let s = Signature::new([("E", 2), ("C", 3)]).unwrap();
        assert_eq!(s.positions(2), 4 + 8);
        assert_eq!(s.max_arity(), 3);
        assert!(s.concat(&Signature::graph()).is_err());
        let t = s.concat(&Signature::new([("U", 1)]).unwrap()).unwrap();
        assert_eq!(t.index_of("U"), Some(2));
        assert_eq!(Signature::empty().positions(5), 0);
    }
}
