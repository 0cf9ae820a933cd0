use serde::{Deserialize, Serialize};

use super::SequenceSource;
use crate::{Error, Result};

/// An eventual period observed on a finite prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Periodicity {
    pub preperiod: usize,
    pub period: usize,
}

/// Least eventual period of `seq` with period at most `max_period`.
///
/// For each candidate period `q` (ascending) the least preperiod `t` is the
/// position just past the last mismatch `seq[n] != seq[n + q]`. A candidate
/// counts only when its periodic tail covers at least half of `seq` and at
/// least two full periods, so a claimed period is never vacuous.
pub fn eventual_period<T: PartialEq>(seq: &[T], max_period: usize) -> Option<Periodicity> {
    let len = seq.len();
    for q in 1..=max_period.min(len) {
        let preperiod = (0..len - q)
            .rev()
            .find(|&n| seq[n] != seq[n + q])
            .map_or(0, |n| n + 1);
        let tail = len - preperiod;
        if tail >= len.div_ceil(2) && tail >= 2 * q {
            return Some(Periodicity { preperiod, period: q });
        }
    }
    None
}

/// Least period `q <= max_period` such that `seq` is purely `q`-periodic and
/// `q` repeats at least twice within `seq`.
pub fn pure_period<T: PartialEq>(seq: &[T], max_period: usize) -> Option<usize> {
    let len = seq.len();
    (1..=max_period.min(len / 2)).find(|&q| (0..len - q).all(|n| seq[n] == seq[n + q]))
}

/// Least `(preperiod, period)` with period at most `max_period`, certified on
/// the first `prefix_length` symbols.
pub fn detect_least_period(
    source: &SequenceSource,
    prefix_length: usize,
    max_period: usize,
) -> Result<Option<Periodicity>> {
    if max_period == 0 {
        return Err(Error::InvalidArgument("max_period must be at least 1".into()));
    }
    if prefix_length < 2 * max_period {
        return Err(Error::InsufficientScan(format!(
            "prefix length {prefix_length} is below twice the maximum period {max_period}"
        )));
    }
    let prefix = source.prefix(prefix_length)?;
    Ok(eventual_period(&prefix, max_period))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_periods() {
        assert_eq!(pure_period(&[0, 1, 0, 1, 0, 1], 3), Some(2));
        assert_eq!(pure_period(&[0, 1, 0, 1, 0, 1, 0, 1], 4), Some(2));
        assert_eq!(pure_period(&[1, 1, 1, 1], 2), Some(1));
        assert_eq!(pure_period(&[0, 0, 1, 0, 0, 1], 2), None);
        assert_eq!(pure_period(&[5, 0, 1, 0, 1, 0, 1], 3), None);
    }

    #[test]
    fn eventual_periods() {
        let s: Vec<u8> = [5, 7].into_iter().chain([0, 1].into_iter().cycle().take(40)).collect();
        assert_eq!(eventual_period(&s, 10), Some(Periodicity { preperiod: 2, period: 2 }));
        let c = [3u8; 20];
        assert_eq!(eventual_period(&c, 5), Some(Periodicity { preperiod: 0, period: 1 }));
    }

    #[test]
    fn tail_must_cover_half_the_prefix() {
        let mut s = vec![0u8, 1, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1, 0, 1, 1, 0];
        s.extend([2u8; 6]);
        assert_eq!(eventual_period(&s, 3), None);
        s.extend([2u8; 12]);
        assert_eq!(eventual_period(&s, 3), Some(Periodicity { preperiod: 16, period: 1 }));
    }
}
