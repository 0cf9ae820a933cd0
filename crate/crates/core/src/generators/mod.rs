//! Constructors for the sequence families under study.

mod examples;
mod interleave;
mod periodic;
mod rotation;
pub mod spec;
mod substitution;
mod toeplitz;

pub use examples::{
    example_6_1, example_6_1_with, example_6_2, example_6_2_with, example_6_3, example_6_3_with,
    fibonacci, named_source, paperfolding, period_doubling, silver_rotation, thue_morse, tribonacci,
    NAMES,
};
pub use interleave::{interleave_source, InterleaveSpec, ResidueSpec};
pub use periodic::{constant_source, periodic_source, periodic_source_over};
pub use rotation::{rotation_source, Cut, Rational, RotationCoding, SlopeAffine};
pub use spec::GeneratorSpec;
pub use substitution::{substitution_source, SubstitutionRule};
pub use toeplitz::{parse_pattern, toeplitz_source, PatternCell};
