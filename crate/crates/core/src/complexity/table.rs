//! Deduplicated factor table used by every window search.
//!
//! A τ-word at start position `n` only depends on the factor
//! `α[n .. n + H]` when `max τ ≤ H`. Scanning `[0, L)` therefore reduces to
//! the distinct length-`(H+1)` factors starting there, which for
//! low-complexity sequences is a few hundred rows instead of `L` positions.
//! Rows are kept in order of first occurrence so the "last new word" position
//! of any window falls out of a single pass.

use std::collections::HashMap;

use crate::seqcore::{is_stable, observed_symbols, SequenceSource, Symbol};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct FactorTable {
    span: usize,
    rows: usize,
    alphabet_size: usize,
    // Column-major: `columns[h * rows + r]` is the dense symbol index at
    // offset `h` of row `r`.
    columns: Vec<u8>,
    first_seen: Vec<usize>,
    scan_length: usize,
}

/// Count and stability of one window's word set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Evaluation {
    pub count: usize,
    pub last_new_at: usize,
}

impl Evaluation {
    pub fn stable(&self, scan_length: usize) -> bool {
        is_stable(self.last_new_at, scan_length)
    }
}

impl FactorTable {
    pub fn build(source: &SequenceSource, horizon: usize, scan_length: usize) -> Result<Self> {
        if scan_length == 0 {
            return Err(Error::InsufficientScan("scan length must be at least 1".into()));
        }
        let span = horizon + 1;
        let prefix = source.prefix(scan_length + horizon)?;
        let symbols = observed_symbols(&prefix);
        let mut dense = [0u8; 256];
        for (i, &s) in symbols.iter().enumerate() {
            dense[s as usize] = i as u8;
        }
        let mut seen: HashMap<&[Symbol], ()> = HashMap::new();
        let mut starts = Vec::new();
        for n in 0..scan_length {
            let factor = &prefix[n..n + span];
            if seen.insert(factor, ()).is_none() {
                starts.push(n);
            }
        }
        let rows = starts.len();
        let mut columns = vec![0u8; span * rows];
        for (r, &n) in starts.iter().enumerate() {
            for h in 0..span {
                columns[h * rows + r] = dense[prefix[n + h] as usize];
            }
        }
        Ok(FactorTable {
            span,
            rows,
            alphabet_size: symbols.len().max(1),
            columns,
            first_seen: starts,
            scan_length,
        })
    }

    pub fn horizon(&self) -> usize {
        self.span - 1
    }

    pub fn scan_length(&self) -> usize {
        self.scan_length
    }

    /// Number of distinct length-`(H+1)` factors.
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub(crate) fn column(&self, h: usize) -> &[u8] {
        &self.columns[h * self.rows..(h + 1) * self.rows]
    }

    pub fn scratch(&self) -> Scratch {
        Scratch::new(self.rows, self.alphabet_size)
    }

    /// Word count for the window with the given indices (each `≤ H`).
    pub fn evaluate(&self, window: &[usize], scratch: &mut Scratch) -> Evaluation {
        let mut classes = vec![0u32; self.rows];
        let mut count = 1;
        for &h in &window[..window.len() - 1] {
            let (next, c) = scratch.refine(&classes, self.column(h), None);
            classes = next;
            count = c;
        }
        let _ = count;
        scratch.count_leaf(&classes, self.column(*window.last().expect("non-empty window")), &self.first_seen)
    }

    pub(crate) fn first_seen(&self) -> &[usize] {
        &self.first_seen
    }
}

/// Reusable buffers for class refinement.
#[derive(Debug, Clone)]
pub struct Scratch {
    alphabet_size: usize,
    stamp: Vec<u32>,
    ids: Vec<u32>,
    epoch: u32,
}

impl Scratch {
    fn new(rows: usize, alphabet_size: usize) -> Self {
        let keys = rows.max(1) * alphabet_size;
        Scratch { alphabet_size, stamp: vec![0; keys], ids: vec![0; keys], epoch: 0 }
    }

    fn next_epoch(&mut self) {
        if self.epoch == u32::MAX {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 0;
        }
        self.epoch += 1;
    }

    /// Splits every class by the symbol in `column`. Returns the new class
    /// per row and the number of classes; fills `sizes` when given.
    pub(crate) fn refine(
        &mut self,
        classes: &[u32],
        column: &[u8],
        sizes: Option<&mut Vec<u32>>,
    ) -> (Vec<u32>, usize) {
        let mut next = vec![0u32; classes.len()];
        let count = self.refine_into(classes, column, &mut next, sizes);
        (next, count)
    }

    pub(crate) fn refine_into(
        &mut self,
        classes: &[u32],
        column: &[u8],
        next: &mut [u32],
        mut sizes: Option<&mut Vec<u32>>,
    ) -> usize {
        self.next_epoch();
        if let Some(s) = sizes.as_deref_mut() {
            s.clear();
        }
        let a = self.alphabet_size;
        let mut count = 0u32;
        for ((&c, &sym), out) in classes.iter().zip(column).zip(next.iter_mut()) {
            let key = c as usize * a + sym as usize;
            if self.stamp[key] != self.epoch {
                self.stamp[key] = self.epoch;
                self.ids[key] = count;
                count += 1;
                if let Some(s) = sizes.as_deref_mut() {
                    s.push(0);
                }
            }
            let id = self.ids[key];
            *out = id;
            if let Some(s) = sizes.as_deref_mut() {
                s[id as usize] += 1;
            }
        }
        count as usize
    }

    /// Number of classes after splitting by `column`, with the first-seen
    /// position of the last class to appear.
    pub(crate) fn count_leaf(&mut self, classes: &[u32], column: &[u8], first_seen: &[usize]) -> Evaluation {
        self.next_epoch();
        let a = self.alphabet_size;
        let mut count = 0;
        let mut last_row = 0;
        for (r, (&c, &sym)) in classes.iter().zip(column).enumerate() {
            let key = c as usize * a + sym as usize;
            if self.stamp[key] != self.epoch {
                self.stamp[key] = self.epoch;
                count += 1;
                last_row = r;
            }
        }
        Evaluation { count, last_new_at: first_seen.get(last_row).copied().unwrap_or(0) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{example_6_3, fibonacci, thue_morse};
    use crate::seqcore::{tau_words, Window};

    #[test]
    fn table_counts_match_direct_scan() {
        for source in [fibonacci(), thue_morse(), example_6_3()] {
            let table = FactorTable::build(&source, 20, 3000).unwrap();
            let mut scratch = table.scratch();
            for idx in [vec![0], vec![0, 1], vec![0, 2], vec![0, 3, 7, 20], vec![0, 1, 2, 3, 4, 5]] {
                let direct = tau_words(&source, &Window::new(idx.clone()).unwrap(), 3000).unwrap();
                let eval = table.evaluate(&idx, &mut scratch);
                assert_eq!(eval.count, direct.len(), "{idx:?}");
                assert_eq!(eval.last_new_at, direct.last_new_at(), "{idx:?}");
            }
        }
    }

    #[test]
    fn fibonacci_has_few_long_factors() {
        let table = FactorTable::build(&fibonacci(), 60, 20_000).unwrap();
        // Sturmian: n + 1 factors of length n.
        assert_eq!(table.rows(), 62);
    }

    #[test]
    fn epoch_wraparound_resets() {
        let table = FactorTable::build(&fibonacci(), 5, 100).unwrap();
        let mut scratch = table.scratch();
        scratch.epoch = u32::MAX - 1;
        let a = table.evaluate(&[0, 2], &mut scratch);
        let b = table.evaluate(&[0, 2], &mut scratch);
        let c = table.evaluate(&[0, 2], &mut scratch);
        assert_eq!((a.count, b.count, c.count), (4, 4, 4));
    }
}
