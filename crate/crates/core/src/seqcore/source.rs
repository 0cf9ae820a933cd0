use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Alphabet, Symbol};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SourceKind {
    Periodic,
    Substitution,
    Rotation,
    Toeplitz,
    Interleave,
    Literal,
    Shifted,
    ResidueView,
}

impl fmt::Display for SourceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SourceKind::Periodic => "periodic",
            SourceKind::Substitution => "substitution",
            SourceKind::Rotation => "rotation",
            SourceKind::Toeplitz => "toeplitz",
            SourceKind::Interleave => "interleave",
            SourceKind::Literal => "literal",
            SourceKind::Shifted => "shifted",
            SourceKind::ResidueView => "residue-view",
        };
        f.write_str(s)
    }
}

/// A deterministic, indexable symbol stream.
///
/// Implementations must be pure: `at(n)` returns the same symbol every time,
/// from any thread. Internal memoization is allowed as long as it behaves as a
/// cache.
pub trait Sequence: Send + Sync + fmt::Debug {
    fn at(&self, n: usize) -> Symbol;

    fn alphabet(&self) -> &Alphabet;

    fn kind(&self) -> SourceKind;

    /// Number of known symbols, `None` for infinite sequences.
    fn known_len(&self) -> Option<usize> {
        None
    }

    /// Writes `at(start..start + out.len())` into `out`.
    fn fill(&self, start: usize, out: &mut [Symbol]) {
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.at(start + i);
        }
    }
}

/// Shared handle to a [`Sequence`].
#[derive(Clone)]
pub struct SequenceSource(Arc<dyn Sequence>);

impl fmt::Debug for SequenceSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl SequenceSource {
    pub fn new<S: Sequence + 'static>(sequence: S) -> Self {
        SequenceSource(Arc::new(sequence))
    }

    /// Symbol at index `n`.
    ///
    /// # Panics
    ///
    /// Panics when `n` lies beyond the end of a finite literal source.
    pub fn at(&self, n: usize) -> Symbol {
        self.0.at(n)
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.0.alphabet()
    }

    pub fn kind(&self) -> SourceKind {
        self.0.kind()
    }

    pub fn known_len(&self) -> Option<usize> {
        self.0.known_len()
    }

    /// Checks that the first `needed` symbols exist.
    pub fn ensure_available(&self, needed: usize) -> Result<()> {
        match self.known_len() {
            Some(available) if available < needed => {
                Err(Error::SourceExhausted { needed, available })
            }
            _ => Ok(()),
        }
    }

    /// Bulk version of [`at`](Self::at); same panics.
    pub fn fill(&self, start: usize, out: &mut [Symbol]) {
        self.0.fill(start, out)
    }

    pub fn segment(&self, start: usize, len: usize) -> Result<Vec<Symbol>> {
        self.ensure_available(start + len)?;
        let mut out = vec![0; len];
        self.0.fill(start, &mut out);
        Ok(out)
    }

    pub fn prefix(&self, len: usize) -> Result<Vec<Symbol>> {
        self.segment(0, len)
    }

    /// The finite shift `σ^t`: `at(n) = self.at(n + t)`.
    pub fn shift(&self, t: usize) -> SequenceSource {
        if t == 0 {
            return self.clone();
        }
        SequenceSource::new(Shifted { inner: self.clone(), offset: t })
    }

    /// The residue `α_i α_{i+m} α_{i+2m} ...`.
    pub fn residue(&self, m: usize, i: usize) -> Result<SequenceSource> {
        if m == 0 {
            return Err(Error::InvalidArgument("modulus must be at least 1".into()));
        }
        if i >= m {
            return Err(Error::InvalidArgument(format!("residue index {i} must be below modulus {m}")));
        }
        if m == 1 {
            return Ok(self.clone());
        }
        Ok(SequenceSource::new(ResidueView { inner: self.clone(), modulus: m, offset: i }))
    }
}

#[derive(Debug)]
struct Shifted {
    inner: SequenceSource,
    offset: usize,
}

impl Sequence for Shifted {
    fn at(&self, n: usize) -> Symbol {
        self.inner.at(n + self.offset)
    }

    fn alphabet(&self) -> &Alphabet {
        self.inner.alphabet()
    }

    fn kind(&self) -> SourceKind {
        SourceKind::Shifted
    }

    fn known_len(&self) -> Option<usize> {
        self.inner.known_len().map(|l| l.saturating_sub(self.offset))
    }

    fn fill(&self, start: usize, out: &mut [Symbol]) {
        self.inner.0.fill(start + self.offset, out)
    }
}

/// Residue view; keeps the parent alphabet.
#[derive(Debug)]
struct ResidueView {
    inner: SequenceSource,
    modulus: usize,
    offset: usize,
}

impl Sequence for ResidueView {
    fn at(&self, n: usize) -> Symbol {
        self.inner.at(self.offset + n * self.modulus)
    }

    fn alphabet(&self) -> &Alphabet {
        self.inner.alphabet()
    }

    fn kind(&self) -> SourceKind {
        SourceKind::ResidueView
    }

    fn known_len(&self) -> Option<usize> {
        self.inner
            .known_len()
            .map(|l| l.saturating_sub(self.offset).div_ceil(self.modulus))
    }

    fn fill(&self, start: usize, out: &mut [Symbol]) {
        if out.is_empty() {
            return;
        }
        let first = self.offset + start * self.modulus;
        let span = (out.len() - 1) * self.modulus + 1;
        let mut raw = vec![0; span];
        self.inner.0.fill(first, &mut raw);
        for (slot, s) in out.iter_mut().zip(raw.iter().step_by(self.modulus)) {
            *slot = *s;
        }
    }
}

/// Explicit symbols, optionally followed by a repeating tail.
///
/// Without a tail the source is finite and reading past its end panics;
/// scanning operations check [`SequenceSource::ensure_available`] first.
#[derive(Debug, Clone)]
pub struct LiteralSource {
    alphabet: Alphabet,
    head: Vec<Symbol>,
    tail: Vec<Symbol>,
}

impl LiteralSource {
    pub fn finite(alphabet: Alphabet, symbols: Vec<Symbol>) -> Result<Self> {
        Self::with_tail(alphabet, symbols, Vec::new())
    }

    pub fn with_tail(alphabet: Alphabet, head: Vec<Symbol>, tail: Vec<Symbol>) -> Result<Self> {
        if let Some(s) = head.iter().chain(&tail).find(|s| !alphabet.contains(**s)) {
            return Err(Error::InvalidArgument(format!("symbol {s} is not in alphabet {alphabet}")));
        }
        if head.is_empty() && tail.is_empty() {
            return Err(Error::InvalidArgument("literal source is empty".into()));
        }
        Ok(LiteralSource { alphabet, head, tail })
    }

    pub fn into_source(self) -> SequenceSource {
        SequenceSource::new(self)
    }
}

impl Sequence for LiteralSource {
    fn at(&self, n: usize) -> Symbol {
        if n < self.head.len() {
            self.head[n]
        } else if self.tail.is_empty() {
            panic!("index {n} beyond finite literal of length {}", self.head.len())
        } else {
            self.tail[(n - self.head.len()) % self.tail.len()]
        }
    }

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn kind(&self) -> SourceKind {
        SourceKind::Literal
    }

    fn known_len(&self) -> Option<usize> {
        self.tail.is_empty().then_some(self.head.len())
    }
}
