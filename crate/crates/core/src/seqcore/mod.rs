//! Symbols, sequences, windows and τ-word extraction.

mod alphabet;
pub mod literal;
mod period;
mod source;
mod window;
mod words;

pub use alphabet::{Alphabet, Symbol};
pub use period::{detect_least_period, eventual_period, pure_period, Periodicity};
pub use source::{LiteralSource, Sequence, SequenceSource, SourceKind};
pub use window::Window;
pub use words::{observed_symbols, rarely_seen_symbols, tau_word, tau_words, Word, WordSet};

pub(crate) use words::is_stable;

use crate::Result;

/// The residue view `α^(i)` with `at(n) = source.at(i + n·m)`.
pub fn restrict_to_residue(source: &SequenceSource, m: usize, i: usize) -> Result<SequenceSource> {
    source.residue(m, i)
}

/// The finite shift `σ^t(α)`.
pub fn shift(source: &SequenceSource, t: usize) -> SequenceSource {
    source.shift(t)
}
