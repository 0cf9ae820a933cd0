use std::fmt;

use serde::{Deserialize, Serialize};

use super::Strategy;
use crate::seqcore::{tau_words, SequenceSource, Window, Word};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exactness {
    LowerBoundOnly,
    MatchesStructuralUpperBound,
    MatchesExpected,
}

impl fmt::Display for Exactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Exactness::LowerBoundOnly => "lower-bound-only",
            Exactness::MatchesStructuralUpperBound => "matches-structural-upper-bound",
            Exactness::MatchesExpected => "matches-expected",
        })
    }
}

/// A horizon-bounded lower bound on `p*(k)` with the window that achieves it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityCertificate {
    pub k: usize,
    pub value: usize,
    pub witness: Window,
    pub strategy: Strategy,
    pub horizon: usize,
    pub scan_length: usize,
    pub exactness: Exactness,
    pub stable: bool,
    pub windows_evaluated: u64,
    pub unstable_windows: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub words: Option<Vec<Word>>,
}

impl ComplexityCertificate {
    /// Marks the certificate exact when it meets the given upper bound.
    /// Returns `false` when the measured value exceeds the bound, which
    /// means the bound's hypotheses do not hold for this source.
    pub fn apply_upper_bound(&mut self, bound: usize) -> bool {
        if self.value == bound && self.exactness == Exactness::LowerBoundOnly {
            self.exactness = Exactness::MatchesStructuralUpperBound;
        }
        self.value <= bound
    }

    pub fn apply_expected(&mut self, expected: usize) -> bool {
        if self.value == expected && self.exactness == Exactness::LowerBoundOnly {
            self.exactness = Exactness::MatchesExpected;
        }
        self.value == expected
    }

    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.unstable_windows > 0 {
            out.push(format!(
                "unstable scan: {} of {} evaluated windows were still gaining words in the second half of the scan",
                self.unstable_windows, self.windows_evaluated
            ));
        }
        out
    }

    /// Attaches the sorted word set of the witness.
    pub fn attach_words(&mut self, source: &SequenceSource) -> Result<()> {
        self.words = Some(tau_words(source, &self.witness, self.scan_length)?.sorted());
        Ok(())
    }
}
