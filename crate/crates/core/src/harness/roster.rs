//! Fixed source rosters shared by the verification suites and tests.

use crate::generators::{
    constant_source, example_6_1, example_6_2, example_6_3, fibonacci, paperfolding, period_doubling,
    periodic_source, silver_rotation, thue_morse, tribonacci,
};
use crate::seqcore::{Alphabet, LiteralSource, SequenceSource};
use crate::Result;

#[derive(Debug, Clone)]
pub struct RosterEntry {
    pub name: String,
    pub source: SequenceSource,
}

fn entry(name: &str, source: SequenceSource) -> RosterEntry {
    RosterEntry { name: name.to_string(), source }
}

/// Sources expected to certify as aperiodic. The first six are the
/// classical two- and three-letter families.
pub fn aperiodic_roster() -> Result<Vec<RosterEntry>> {
    Ok(vec![
        entry("fibonacci", fibonacci()),
        entry("thue-morse", thue_morse()),
        entry("tribonacci", tribonacci()),
        entry("period-doubling", period_doubling()),
        entry("paperfolding", paperfolding()),
        entry("silver-rotation", silver_rotation()),
        entry("example-6.1(ell=3)", example_6_1(3)?),
        entry("example-6.1(ell=4)", example_6_1(4)?),
        entry("example-6.1(ell=5)", example_6_1(5)?),
        entry("example-6.2", example_6_2()),
        entry("example-6.3", example_6_3()),
    ])
}

/// Eventually periodic sources.
pub fn periodic_roster() -> Result<Vec<RosterEntry>> {
    Ok(vec![
        entry("periodic-01", periodic_source(&[0, 1])?),
        entry("periodic-012", periodic_source(&[0, 1, 2])?),
        entry("periodic-0010", periodic_source(&[0, 0, 1, 0])?),
        entry(
            "literal-57(01)",
            LiteralSource::with_tail(Alphabet::new([0, 1, 5, 7])?, vec![5, 7], vec![0, 1])?.into_source(),
        ),
        entry("constant-3", constant_source(3)),
    ])
}

/// Pairs of uniformly recurrent sources for shared-window searches.
pub fn recurrent_pairs() -> Result<Vec<(RosterEntry, RosterEntry)>> {
    Ok(vec![
        (entry("fibonacci", fibonacci()), entry("thue-morse", thue_morse())),
        (entry("fibonacci", fibonacci()), entry("shift(fibonacci,1)", fibonacci().shift(1))),
        (entry("tribonacci", tribonacci()), entry("period-doubling", period_doubling())),
        (entry("paperfolding", paperfolding()), entry("silver-rotation", silver_rotation())),
        (entry("example-6.1(ell=3)", example_6_1(3)?), entry("example-6.3", example_6_3())),
    ])
}
