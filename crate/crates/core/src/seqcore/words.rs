use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{SequenceSource, Symbol, Window};
use crate::{Error, Result};

/// A finite word, stored as a packed symbol vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&s| s < 10) {
            for s in &self.0 {
                write!(f, "{s}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
            f.write_str(&parts.join(" "))
        }
    }
}

/// The τ-words seen over start positions `[0, scan_length)`.
#[derive(Debug, Clone)]
pub struct WordSet {
    words: HashSet<Word>,
    scan_length: usize,
    last_new_at: usize,
    stable: bool,
}

impl WordSet {
    pub(crate) fn from_parts(words: HashSet<Word>, scan_length: usize, last_new_at: usize) -> Self {
        WordSet { words, scan_length, last_new_at, stable: is_stable(last_new_at, scan_length) }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &HashSet<Word> {
        &self.words
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    pub fn scan_length(&self) -> usize {
        self.scan_length
    }

    /// Largest start position that contributed a previously unseen word.
    pub fn last_new_at(&self) -> usize {
        self.last_new_at
    }

    /// No new word appeared in the second half of the scan.
    pub fn stable(&self) -> bool {
        self.stable
    }

    /// Words in lexicographic order.
    pub fn sorted(&self) -> Vec<Word> {
        let mut v: Vec<Word> = self.words.iter().cloned().collect();
        v.sort();
        v
    }
}

pub(crate) fn is_stable(last_new_at: usize, scan_length: usize) -> bool {
    2 * last_new_at <= scan_length
}

/// The τ-word `α[n + τ]`.
///
/// # Panics
///
/// Panics if the source is a finite literal too short for `n + max τ`.
pub fn tau_word(source: &SequenceSource, window: &Window, n: usize) -> Word {
    Word(window.indices().iter().map(|&i| source.at(n + i)).collect())
}

/// `F_α(τ)` restricted to start positions `[0, scan_length)`.
pub fn tau_words(source: &SequenceSource, window: &Window, scan_length: usize) -> Result<WordSet> {
    if scan_length == 0 {
        return Err(Error::InsufficientScan("scan length must be at least 1".into()));
    }
    let span = window.max_index() + 1;
    let prefix = source.prefix(scan_length + span - 1)?;
    let mut words = HashSet::new();
    let mut last_new_at = 0;
    for n in 0..scan_length {
        let w = Word(window.indices().iter().map(|&i| prefix[n + i]).collect());
        if words.insert(w) {
            last_new_at = n;
        }
    }
    Ok(WordSet::from_parts(words, scan_length, last_new_at))
}

/// Symbols that stop occurring in the second half of `prefix`.
///
/// Such symbols look like they appear only finitely often, which the
/// complexity theory assumes never happens; reports surface them as warnings.
pub fn rarely_seen_symbols(prefix: &[Symbol]) -> Vec<Symbol> {
    let half = prefix.len() / 2;
    let mut early: Vec<Symbol> = prefix[..half].to_vec();
    early.sort_unstable();
    early.dedup();
    let mut late: Vec<Symbol> = prefix[half..].to_vec();
    late.sort_unstable();
    late.dedup();
    early.retain(|s| late.binary_search(s).is_err());
    early
}

/// Distinct symbols of `prefix`, ascending.
pub fn observed_symbols(prefix: &[Symbol]) -> Vec<Symbol> {
    let mut seen = [false; 256];
    for &s in prefix {
        seen[s as usize] = true;
    }
    (0..256).filter(|&s| seen[s]).map(|s| s as Symbol).collect()
}
