use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::seqcore::{observed_symbols, pure_period, SequenceSource, Symbol};
use crate::{Error, Result};

/// Least pure period of each observed letter's indicator on a prefix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularReport {
    pub scan_length: usize,
    pub max_period: usize,
    /// Every observed letter, with its indicator period when singular.
    pub letters: BTreeMap<Symbol, Option<usize>>,
}

impl SingularReport {
    /// Singular letters and their periods.
    pub fn singular(&self) -> BTreeMap<Symbol, usize> {
        self.letters.iter().filter_map(|(&b, &q)| q.map(|q| (b, q))).collect()
    }

    pub fn is_singular(&self, letter: Symbol) -> bool {
        self.letters.get(&letter).is_some_and(Option::is_some)
    }
}

pub fn singular_letters(source: &SequenceSource, scan_length: usize, max_period: usize) -> Result<SingularReport> {
    if max_period == 0 {
        return Err(Error::InvalidArgument("max_period must be at least 1".into()));
    }
    if scan_length < 2 * max_period {
        return Err(Error::InsufficientScan(format!(
            "scan length {scan_length} is below twice the maximum period {max_period}"
        )));
    }
    let prefix = source.prefix(scan_length)?;
    let letters = observed_symbols(&prefix)
        .into_iter()
        .map(|b| {
            let indicator: Vec<bool> = prefix.iter().map(|&s| s == b).collect();
            (b, pure_period(&indicator, max_period))
        })
        .collect();
    Ok(SingularReport { scan_length, max_period, letters })
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Least common multiple of the singular periods; 1 when there are none.
pub fn decomposition_cycle(report: &SingularReport) -> usize {
    report.singular().values().fold(1, |m, &q| lcm(m, q))
}

/// Singular letters at their positions, `None` elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularMask {
    pub cells: Vec<Option<Symbol>>,
    /// Least period of the mask; divides the decomposition cycle.
    pub period: usize,
}

impl SingularMask {
    /// One period of the mask, e.g. `??2`.
    pub fn pattern(&self) -> String {
        render(&self.cells[..self.period.min(self.cells.len())], "")
    }
}

fn render(cells: &[Option<Symbol>], sep: &str) -> String {
    cells
        .iter()
        .map(|c| c.map_or_else(|| "?".to_string(), |s| s.to_string()))
        .collect::<Vec<_>>()
        .join(sep)
}

impl fmt::Display for SingularMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.cells, " "))
    }
}

pub fn singular_mask(source: &SequenceSource, report: &SingularReport, length: usize) -> Result<SingularMask> {
    let m = decomposition_cycle(report);
    let probe = length.max(2 * m);
    let cells: Vec<Option<Symbol>> =
        source.prefix(probe)?.into_iter().map(|s| report.is_singular(s).then_some(s)).collect();
    let period = (1..=m)
        .filter(|&q| m.is_multiple_of(q))
        .find(|&q| (0..probe - q).all(|n| cells[n] == cells[n + q]))
        .unwrap_or(m);
    Ok(SingularMask { cells: cells[..length].to_vec(), period })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{constant_source, example_6_1, example_6_2, example_6_3, fibonacci, periodic_source};

    #[test]
    fn singular_letters_of_examples() {
        let r = singular_letters(&example_6_3(), 20_000, 64).unwrap();
        assert_eq!(r.letters, BTreeMap::from([(0, None), (1, None), (2, Some(3))]));
        let r = singular_letters(&example_6_2(), 20_000, 64).unwrap();
        assert_eq!(r.letters, BTreeMap::from([(0, None), (1, None), (2, Some(5)), (3, Some(5))]));
        let r = singular_letters(&constant_source(7), 100, 10).unwrap();
        assert_eq!(r.singular(), BTreeMap::from([(7, 1)]));
    }

    #[test]
    fn cycles() {
        for ell in 3..=5 {
            let r = singular_letters(&example_6_1(ell).unwrap(), 20_000, 64).unwrap();
            assert_eq!(decomposition_cycle(&r), ell - 1);
        }
        assert_eq!(decomposition_cycle(&singular_letters(&example_6_3(), 20_000, 64).unwrap()), 3);
        assert_eq!(decomposition_cycle(&singular_letters(&fibonacci(), 20_000, 64).unwrap()), 1);
        let mixed = periodic_source(&[0, 1, 2, 0, 1, 0]).unwrap();
        assert_eq!(decomposition_cycle(&singular_letters(&mixed, 1000, 10).unwrap()), 6);
    }

    #[test]
    fn masks() {
        let src = example_6_3();
        let r = singular_letters(&src, 20_000, 64).unwrap();
        let mask = singular_mask(&src, &r, 9).unwrap();
        assert_eq!(mask.to_string(), "? ? 2 ? ? 2 ? ? 2");
        assert_eq!((mask.period, mask.pattern().as_str()), (3, "??2"));

        let fib = fibonacci();
        let mask = singular_mask(&fib, &singular_letters(&fib, 20_000, 64).unwrap(), 5).unwrap();
        assert_eq!((mask.to_string().as_str(), mask.period), ("? ? ? ? ?", 1));

        let src = example_6_2();
        let mask = singular_mask(&src, &singular_letters(&src, 20_000, 64).unwrap(), 10).unwrap();
        assert_eq!((mask.to_string().as_str(), mask.period), ("? 2 3 3 2 ? 2 3 3 2", 5));
    }

    #[test]
    fn scan_checked() {
        assert!(singular_letters(&fibonacci(), 100, 51).is_err());
        assert!(singular_letters(&fibonacci(), 100, 0).is_err());
    }
}
