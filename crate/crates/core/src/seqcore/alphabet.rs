use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A symbol is a small non-negative integer; display names live on the
/// [`Alphabet`].
pub type Symbol = u8;

/// An ordered set of distinct symbols with optional display names.
///
/// Symbols are kept in ascending order, so two alphabets built from the same
/// symbols compare equal regardless of construction order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = Symbol>) -> Result<Self> {
        let mut symbols: Vec<Symbol> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet must not be empty".into()));
        }
        let before = symbols.len();
        symbols.sort_unstable();
        symbols.dedup();
        if symbols.len() != before {
            return Err(Error::InvalidAlphabet("symbols must be pairwise distinct".into()));
        }
        Ok(Alphabet { symbols, names: None })
    }

    /// The alphabet `{0, 1, ..., size - 1}`.
    pub fn range(size: usize) -> Result<Self> {
        if size == 0 || size > 256 {
            return Err(Error::InvalidAlphabet(format!("size {size} out of range 1..=256")));
        }
        Alphabet::new((0..size).map(|s| s as Symbol))
    }

    /// Named alphabet; the i-th name labels symbol `i`.
    pub fn with_names<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut alphabet = Alphabet::range(names.len())?;
        let mut seen = names.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != names.len() {
            return Err(Error::InvalidAlphabet("display names must be distinct".into()));
        }
        if names.iter().any(|n| n.is_empty()) {
            return Err(Error::InvalidAlphabet("display names must be non-empty".into()));
        }
        alphabet.names = Some(names);
        Ok(alphabet)
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn contains(&self, symbol: Symbol) -> bool {
        self.symbols.binary_search(&symbol).is_ok()
    }

    /// Position of `symbol` in the ordering.
    pub fn index_of(&self, symbol: Symbol) -> Option<usize> {
        self.symbols.binary_search(&symbol).ok()
    }

    pub fn has_names(&self) -> bool {
        self.names.is_some()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, symbol: Symbol) -> String {
        match (&self.names, self.index_of(symbol)) {
            (Some(names), Some(i)) => names[i].clone(),
            _ => symbol.to_string(),
        }
    }

    /// Looks a symbol up by its display name (or decimal value when unnamed).
    pub fn lookup(&self, name: &str) -> Option<Symbol> {
        match &self.names {
            Some(names) => names.iter().position(|n| n == name).map(|i| self.symbols[i]),
            None => name.parse::<Symbol>().ok().filter(|s| self.contains(*s)),
        }
    }

    /// Union of two alphabets. Names are kept only when both sides agree on them.
    pub fn union(&self, other: &Alphabet) -> Alphabet {
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        symbols.sort_unstable();
        symbols.dedup();
        let names = match (&self.names, &other.names) {
            (Some(_), Some(_)) | (Some(_), None) | (None, Some(_)) => {
                let pick = |s: Symbol| {
                    if self.contains(s) && self.names.is_some() {
                        Some(self.name(s))
                    } else if other.contains(s) && other.names.is_some() {
                        Some(other.name(s))
                    } else {
                        None
                    }
                };
                let names: Option<Vec<String>> = symbols.iter().map(|&s| pick(s)).collect();
                names.filter(|ns| {
                    let mut sorted = ns.clone();
                    sorted.sort();
                    sorted.dedup();
                    sorted.len() == ns.len()
                })
            }
            (None, None) => None,
        };
        Alphabet { symbols, names }
    }

    /// True when every symbol renders as a single character.
    pub fn single_char_names(&self) -> bool {
        self.symbols.iter().all(|&s| self.name(s).chars().count() == 1)
    }

    pub fn render(&self, symbols: &[Symbol]) -> String {
        if self.single_char_names() {
            symbols.iter().map(|&s| self.name(s)).collect()
        } else {
            symbols.iter().map(|&s| self.name(s)).collect::<Vec<_>>().join(" ")
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.symbols.iter().map(|&s| self.name(s)).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_duplicates() {
        assert!(Alphabet::new([]).is_err());
        assert!(Alphabet::new([1, 2, 1]).is_err());
        assert!(Alphabet::with_names(["a", "a"]).is_err());
    }

    #[test]
    fn ordering_is_ascending() {
        let a = Alphabet::new([3, 0, 2]).unwrap();
        assert_eq!(a.symbols(), &[0, 2, 3]);
        assert_eq!(a.index_of(2), Some(1));
        assert_eq!(a.index_of(1), None);
    }

    #[test]
    fn names_round_trip() {
        let a = Alphabet::with_names(["a", "b", "c"]).unwrap();
        assert_eq!(a.lookup("b"), Some(1));
        assert_eq!(a.name(2), "c");
        assert_eq!(a.render(&[0, 2, 1]), "acb");
        assert_eq!(a.to_string(), "{a,b,c}");
    }

    #[test]
    fn union_merges_symbols() {
        let a = Alphabet::new([0, 1]).unwrap();
        let b = Alphabet::new([2]).unwrap();
        assert_eq!(a.union(&b).symbols(), &[0, 1, 2]);
    }
}
