use crate::decompose::{constant_surplus, Classification, DecompositionReport};

/// Upper bound on `p*(k)` implied by a certified structure, if any.
///
/// For one pattern Sturmian residue among constant ones, each start class
/// either meets the aperiodic residue (contributing `2k` words in total over
/// those classes) or reads a fixed constant word; the bound is `2k` plus the
/// most distinct constant words any offset pattern of size `≤ min(k, m)` can
/// produce. An eventually periodic sequence has at most
/// `preperiod + period` words per window.
pub fn structural_upper_bound(report: &DecompositionReport, k: usize) -> Option<usize> {
    match report.classification {
        Classification::StrongPatternSturmianStructure | Classification::PatternSturmianPlusConstants => {
            let p = report.aperiodic_residue()?.index;
            Some(2 * k + constant_surplus(&report.residue_constants(), p, k.min(report.m)))
        }
        Classification::Periodic => report.sequence_period.map(|s| s.preperiod + s.period),
        Classification::LowComplexityStructure | Classification::Unclassified => None,
    }
}
