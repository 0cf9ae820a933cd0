//! Named sequence families, including the zippered constructions whose
//! pattern complexities serve as regression tables.

use super::{
    interleave_source, rotation_source, substitution_source, toeplitz_source, InterleaveSpec,
    ResidueSpec, RotationCoding, SubstitutionRule,
};
use crate::seqcore::{SequenceSource, Symbol};
use crate::{Error, Result};

pub fn fibonacci() -> SequenceSource {
    substitution_source(&SubstitutionRule::fibonacci())
}

pub fn thue_morse() -> SequenceSource {
    substitution_source(&SubstitutionRule::thue_morse())
}

pub fn tribonacci() -> SequenceSource {
    substitution_source(&SubstitutionRule::tribonacci())
}

pub fn period_doubling() -> SequenceSource {
    substitution_source(&SubstitutionRule::period_doubling())
}

/// Toeplitz word of the pattern `0?1?`.
pub fn paperfolding() -> SequenceSource {
    toeplitz_source(&[Some(0), None, Some(1), None]).expect("valid pattern")
}

/// Two-interval coding of the silver-ratio rotation, certified on 200 000 indices.
pub fn silver_rotation() -> SequenceSource {
    rotation_source(&RotationCoding::silver_halves(14), 200_000).expect("depth 14 certifies 200 000 indices")
}

/// Residue 0 carries `x`, residue `j` (for `1 ≤ j < ℓ-1`) the constant `j + 1`.
///
/// With a pattern Sturmian `x` this is strong pattern Sturmian: complexity
/// `2k + ℓ - 2`, decomposition cycle `ℓ - 1`.
pub fn example_6_1(ell: usize) -> Result<SequenceSource> {
    example_6_1_with(ell, fibonacci())
}

pub fn example_6_1_with(ell: usize, x: SequenceSource) -> Result<SequenceSource> {
    if ell < 3 {
        return Err(Error::InvalidArgument(format!("alphabet size must be at least 3, got {ell}")));
    }
    if ell > 256 {
        return Err(Error::InvalidArgument(format!("alphabet size {ell} exceeds 256")));
    }
    let mut residues = vec![ResidueSpec::Source(x)];
    residues.extend((1..ell - 1).map(|j| ResidueSpec::Constant((j + 1) as Symbol)));
    interleave_source(&InterleaveSpec::new(residues)?)
}

/// Residues `(x, 2, 3, 3, 2)`: pattern Sturmian zipped with constants,
/// complexity `2k + 3`.
pub fn example_6_2() -> SequenceSource {
    example_6_2_with(fibonacci())
}

pub fn example_6_2_with(x: SequenceSource) -> SequenceSource {
    let residues = vec![
        ResidueSpec::Source(x),
        ResidueSpec::Constant(2),
        ResidueSpec::Constant(3),
        ResidueSpec::Constant(3),
        ResidueSpec::Constant(2),
    ];
    interleave_source(&InterleaveSpec::new(residues).expect("five residues")).expect("valid interleave")
}

/// Residues `(x, x, 2)`: two copies of the Fibonacci word and a constant,
/// complexity `4k` for `k ≥ 2`.
pub fn example_6_3() -> SequenceSource {
    example_6_3_with(fibonacci())
}

pub fn example_6_3_with(x: SequenceSource) -> SequenceSource {
    let residues = vec![ResidueSpec::Source(x.clone()), ResidueSpec::Source(x), ResidueSpec::Constant(2)];
    interleave_source(&InterleaveSpec::new(residues).expect("three residues")).expect("valid interleave")
}

/// Names accepted by [`named_source`].
pub const NAMES: &[&str] = &[
    "fibonacci",
    "thue-morse",
    "tribonacci",
    "period-doubling",
    "paperfolding",
    "silver-rotation",
    "example-6.1",
    "example-6.2",
    "example-6.3",
];

/// Looks up a named family; `ell` is only used by `example-6.1` (default 3).
pub fn named_source(name: &str, ell: Option<usize>) -> Result<SequenceSource> {
    Ok(match name {
        "fibonacci" => fibonacci(),
        "thue-morse" => thue_morse(),
        "tribonacci" => tribonacci(),
        "period-doubling" => period_doubling(),
        "paperfolding" => paperfolding(),
        "silver-rotation" => silver_rotation(),
        "example-6.1" => example_6_1(ell.unwrap_or(3))?,
        "example-6.2" => example_6_2(),
        "example-6.3" => example_6_3(),
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown source {other:?}; expected one of {}",
                NAMES.join(", ")
            )))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_6_1_prefix() {
        assert_eq!(example_6_1(3).unwrap().prefix(6).unwrap(), vec![0, 2, 1, 2, 0, 2]);
        assert_eq!(example_6_1(4).unwrap().prefix(6).unwrap(), vec![0, 2, 3, 1, 2, 3]);
        assert!(example_6_1(2).is_err());
    }

    #[test]
    fn example_6_2_prefix() {
        assert_eq!(example_6_2().prefix(10).unwrap(), vec![0, 2, 3, 3, 2, 1, 2, 3, 3, 2]);
    }

    #[test]
    fn example_6_3_prefix() {
        assert_eq!(example_6_3().prefix(6).unwrap(), vec![0, 0, 2, 1, 1, 2]);
    }

    #[test]
    fn example_6_1_uses_whole_alphabet() {
        for ell in 3..=6 {
            let s = example_6_1(ell).unwrap();
            let seen = crate::seqcore::observed_symbols(&s.prefix(10_000).unwrap());
            assert_eq!(seen, (0..ell as Symbol).collect::<Vec<_>>());
            let early = crate::seqcore::observed_symbols(&s.prefix(10 * (ell - 1)).unwrap());
            let missing: Vec<Symbol> =
                (0..ell as Symbol).filter(|c| early.binary_search(c).is_err()).collect();
            assert!(missing.is_empty() || missing == [0] || missing == [1]);
        }
    }

    #[test]
    fn names_resolve() {
        for name in NAMES {
            assert!(named_source(name, None).is_ok(), "{name}");
        }
        assert!(named_source("nope", None).is_err());
    }
}
