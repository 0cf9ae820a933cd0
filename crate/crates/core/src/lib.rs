//! Maximal pattern complexity of one-sided symbolic sequences.
//!
//! The crate is organised bottom-up:
//!
//! * [`seqcore`] holds alphabets, sequence sources, windows and the
//!   τ-word extraction engine.
//! * [`generators`] builds the sequence families of interest: periodic words,
//!   substitution fixed points, certified rotation codings, Toeplitz words and
//!   residue interleavings.
//! * [`complexity`] searches windows for large word counts and certifies
//!   lower (and, structurally, upper) bounds on the maximal pattern complexity.
//! * [`decompose`] detects singular letters, the decomposition cycle, residue
//!   structure and classifies low-complexity sequences.
//! * [`harness`] runs experiments, regression tables and verification suites.

pub mod complexity;
pub mod decompose;
mod error;
pub mod generators;
pub mod harness;
pub mod par;
pub mod seqcore;

pub use error::{Error, Result};
pub use seqcore::{Alphabet, SequenceSource, SourceKind, Symbol, Window, Word, WordSet};
