//! Singular letters, decomposition cycle, residues and structure
//! classification of low-complexity sequences.
//!
//! Every verdict here is a prefix certificate: "periodic with period `q` on
//! the scanned range". Reports carry their scan parameters so a larger scan
//! can falsify them.

mod classify;
mod recurrence;
mod residues;
mod singular;

pub use classify::{
    classify_structure, classify_structure_with, constant_surplus, Classification, ClassifyOptions,
    DecompositionReport, MaskSummary, ResidueSummary, Verdict,
};
pub use recurrence::uniform_recurrence_profile;
pub use residues::{
    class_word_sets, periodic_by_projection, periodic_by_projection_with, residue_graph, ProjectionHit,
    ResidueGraph, MAX_PROJECTION_ALPHABET,
};
pub(crate) use residues::residue_alphabets;
pub use singular::{decomposition_cycle, singular_letters, singular_mask, SingularMask, SingularReport};
