//! Exhaustive, greedy and hybrid window search over a [`FactorTable`].

use super::table::{Evaluation, FactorTable, Scratch};
use super::{ComplexityCertificate, Exactness, SearchConfig, Strategy};
use crate::par;
use crate::seqcore::{SequenceSource, Window};
use crate::Result;

/// Best window found by one search, with bookkeeping for warnings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Found {
    pub indices: Vec<usize>,
    pub eval: Evaluation,
    pub evaluated: u64,
    pub unstable: u64,
}

#[derive(Debug, Default)]
struct Tally {
    best: Option<(Vec<usize>, Evaluation)>,
    evaluated: u64,
    unstable: u64,
}

impl Tally {
    fn best_count(&self) -> usize {
        self.best.as_ref().map_or(0, |(_, e)| e.count)
    }

    fn offer(&mut self, indices: &[usize], eval: Evaluation, scan_length: usize) {
        self.evaluated += 1;
        if !eval.stable(scan_length) {
            self.unstable += 1;
        }
        if eval.count > self.best_count() {
            self.best = Some((indices.to_vec(), eval));
        }
    }
}

/// Window search over one source with a fixed configuration. Building the
/// factor table is the expensive step, so reuse one instance across `k`.
#[derive(Debug, Clone)]
pub struct WindowSearch {
    table: FactorTable,
    config: SearchConfig,
    candidates: Vec<usize>,
}

impl WindowSearch {
    pub fn new(source: &SequenceSource, config: &SearchConfig) -> Result<Self> {
        config.validate()?;
        let table = FactorTable::build(source, config.horizon, config.scan_length)?;
        Ok(WindowSearch { table, candidates: config.candidates(), config: config.clone() })
    }

    pub fn table(&self) -> &FactorTable {
        &self.table
    }

    pub fn config(&self) -> &SearchConfig {
        &self.config
    }

    pub fn certify(&self, k: usize) -> Result<ComplexityCertificate> {
        self.certify_with(k, self.config.strategy)
    }

    pub fn certify_with(&self, k: usize, strategy: Strategy) -> Result<ComplexityCertificate> {
        self.config.validate_for(k)?;
        let found = match strategy {
            Strategy::Exhaustive => self.exhaustive(k),
            Strategy::Greedy => self.greedy_from(&[0], k),
            Strategy::Hybrid(size) => {
                let head = self.exhaustive(size.min(k));
                let mut tail = self.greedy_from(&head.indices, k);
                tail.evaluated += head.evaluated;
                tail.unstable += head.unstable;
                tail
            }
        };
        Ok(ComplexityCertificate {
            k,
            value: found.eval.count,
            witness: Window::new(found.indices).expect("search produces valid windows"),
            strategy,
            horizon: self.config.horizon,
            scan_length: self.config.scan_length,
            exactness: Exactness::LowerBoundOnly,
            stable: found.eval.stable(self.config.scan_length),
            windows_evaluated: found.evaluated,
            unstable_windows: found.unstable,
            words: None,
        })
    }

    /// Word count of an arbitrary window with max index within the horizon.
    pub fn evaluate(&self, window: &Window) -> Option<Evaluation> {
        (window.max_index() <= self.table.horizon())
            .then(|| self.table.evaluate(window.indices(), &mut self.table.scratch()))
    }

    /// Repeatedly adds the extension with the largest count (ties: smallest
    /// index), leaving room for the remaining indices within the horizon.
    pub fn greedy_from(&self, start: &[usize], k: usize) -> Found {
        let scan = self.config.scan_length;
        let mut scratch = self.table.scratch();
        let mut tally = Tally::default();
        let mut indices = start.to_vec();
        let mut classes = self.classes_of(&indices, &mut scratch);
        if indices.len() >= k {
            let eval = self.table.evaluate(&indices, &mut scratch);
            tally.offer(&indices, eval, scan);
        }
        while indices.len() < k {
            let remaining = k - indices.len() - 1;
            let last = *indices.last().expect("windows are non-empty");
            let from = self.candidates.partition_point(|&h| h <= last);
            let upto = self.candidates.len().saturating_sub(remaining);
            let mut step: Option<(usize, Evaluation)> = None;
            for &h in &self.candidates[from..upto.max(from)] {
                let eval = scratch.count_leaf(&classes, self.table.column(h), self.table.first_seen());
                tally.evaluated += 1;
                if !eval.stable(scan) {
                    tally.unstable += 1;
                }
                if step.is_none_or(|(_, e)| eval.count > e.count) {
                    step = Some((h, eval));
                }
            }
            let (h, eval) = step.expect("horizon validated for k");
            classes = scratch.refine(&classes, self.table.column(h), None).0;
            indices.push(h);
            if indices.len() == k {
                tally.best = Some((indices.clone(), eval));
            }
        }
        let (indices, eval) = tally.best.expect("greedy always completes");
        Found { indices, eval, evaluated: tally.evaluated, unstable: tally.unstable }
    }

    /// Every window `{0} ∪ S`, `S` a `(k−1)`-subset of the candidates; the
    /// maximum count with the lexicographically least witness.
    pub fn exhaustive(&self, k: usize) -> Found {
        let scan = self.config.scan_length;
        let mut scratch = self.table.scratch();
        let root = self.classes_of(&[0], &mut scratch);
        if k == 1 {
            let eval = self.table.evaluate(&[0], &mut scratch);
            let unstable = u64::from(!eval.stable(scan));
            return Found { indices: vec![0], eval, evaluated: 1, unstable };
        }
        let seed = self.greedy_from(&[0], k).eval.count;
        let first_positions: Vec<usize> = (0..=self.candidates.len() - (k - 1)).collect();
        let tallies = par::map(&first_positions, self.config.parallelism, |&pos| {
            let mut dfs = Dfs::new(self, k, seed);
            dfs.subtree(&root, pos);
            dfs.tally
        });
        let mut total = Tally::default();
        for t in tallies {
            total.evaluated += t.evaluated;
            total.unstable += t.unstable;
            if let Some((w, e)) = t.best {
                if e.count > total.best_count() {
                    total.best = Some((w, e));
                }
            }
        }
        let (indices, eval) = total.best.expect("the greedy witness is never pruned");
        Found { indices, eval, evaluated: total.evaluated, unstable: total.unstable }
    }

    fn classes_of(&self, indices: &[usize], scratch: &mut Scratch) -> Vec<u32> {
        let mut classes = vec![0u32; self.table.rows()];
        for &h in indices {
            classes = scratch.refine(&classes, self.table.column(h), None).0;
        }
        classes
    }
}

/// Depth-first enumeration in lexicographic order with a class-size bound.
struct Dfs<'a> {
    search: &'a WindowSearch,
    k: usize,
    seed: usize,
    scratch: Scratch,
    levels: Vec<Vec<u32>>,
    sizes: Vec<u32>,
    indices: Vec<usize>,
    tally: Tally,
}

impl<'a> Dfs<'a> {
    fn new(search: &'a WindowSearch, k: usize, seed: usize) -> Self {
        let rows = search.table.rows();
        Dfs {
            search,
            k,
            seed,
            scratch: search.table.scratch(),
            levels: vec![vec![0; rows]; k],
            sizes: Vec::new(),
            indices: vec![0],
            tally: Tally::default(),
        }
    }

    /// Explores every window whose second index is `candidates[pos]`.
    fn subtree(&mut self, root: &[u32], pos: usize) {
        self.levels[1].copy_from_slice(root);
        self.descend(1, pos, pos + 1);
    }

    /// `levels[depth]` holds the classes for `indices` (length `depth`).
    /// Tries candidates `from..to` as the next index.
    fn descend(&mut self, depth: usize, from: usize, to: usize) {
        let search = self.search;
        let table = &search.table;
        let cands = &search.candidates;
        let need = self.k - depth;
        if need == 1 {
            for &h in &cands[from..to] {
                let eval = self.scratch.count_leaf(&self.levels[depth], table.column(h), table.first_seen());
                self.indices.push(h);
                self.tally.offer(&self.indices, eval, search.config.scan_length);
                self.indices.pop();
            }
            return;
        }
        let alphabet = table.alphabet_size();
        let cap = alphabet.saturating_pow((need - 1) as u32);
        for pos in from..to {
            let h = cands[pos];
            let (prev, next) = self.levels.split_at_mut(depth + 1);
            self.scratch.refine_into(&prev[depth], table.column(h), &mut next[0], Some(&mut self.sizes));
            let bound: usize = self.sizes.iter().map(|&s| (s as usize).min(cap)).sum();
            if bound < self.seed || bound <= self.tally.best_count() {
                continue;
            }
            self.indices.push(h);
            self.descend(depth + 1, pos + 1, cands.len() - (need - 2));
            self.indices.pop();
        }
    }
}

/// `p*(k)` lower bound for one `k`. For several `k` on the same source
/// build a [`WindowSearch`] once instead.
pub fn pattern_complexity(source: &SequenceSource, k: usize, config: &SearchConfig) -> Result<ComplexityCertificate> {
    config.validate_for(k)?;
    WindowSearch::new(source, config)?.certify(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{constant_source, example_6_1, example_6_3, fibonacci, periodic_source, thue_morse};
    use crate::par::Parallelism;
    use crate::seqcore::tau_words;
    use crate::Error;

    fn config(h: usize, scan: usize) -> SearchConfig {
        SearchConfig::new(h, scan)
    }

    #[test]
    fn constant_source_has_one_word() {
        let cert = pattern_complexity(&constant_source(4), 3, &config(10, 200)).unwrap();
        assert_eq!(cert.value, 1);
        assert_eq!(cert.witness.indices(), &[0, 1, 2]);
        let greedy = pattern_complexity(&constant_source(4), 3, &config(10, 200).with_strategy(Strategy::Greedy)).unwrap();
        assert_eq!(greedy.witness.indices(), &[0, 1, 2]);
    }

    #[test]
    fn fibonacci_k2() {
        let cert = pattern_complexity(&fibonacci(), 2, &config(30, 5000)).unwrap();
        assert_eq!(cert.value, 4);
        assert_eq!(cert.witness.indices(), &[0, 2]);
        assert!(cert.stable);
        assert_eq!(cert.exactness, Exactness::LowerBoundOnly);
    }

    #[test]
    fn example_values() {
        let c = pattern_complexity(&example_6_1(3).unwrap(), 2, &config(30, 20_000)).unwrap();
        assert_eq!(c.value, 5);
        let c = pattern_complexity(&example_6_3(), 2, &config(60, 20_000)).unwrap();
        assert_eq!(c.value, 8);
    }

    #[test]
    fn witness_value_matches_direct_scan() {
        let src = thue_morse();
        let search = WindowSearch::new(&src, &config(16, 3000)).unwrap();
        for k in 1..=4 {
            let cert = search.certify(k).unwrap();
            let ws = tau_words(&src, &cert.witness, 3000).unwrap();
            assert_eq!(ws.len(), cert.value);
            assert_eq!(ws.stable(), cert.stable);
        }
    }

    #[test]
    fn exhaustive_matches_unpruned_enumeration() {
        let src = example_6_3();
        let search = WindowSearch::new(&src, &config(9, 2000)).unwrap();
        let mut scratch = search.table().scratch();
        for k in 2..=4 {
            let mut best: Option<(usize, Vec<usize>)> = None;
            for mask in 0u32..(1 << 9) {
                if mask.count_ones() as usize != k - 1 {
                    continue;
                }
                let mut w = vec![0];
                w.extend((1..=9).filter(|h| mask & (1 << (h - 1)) != 0));
                let c = search.table().evaluate(&w, &mut scratch).count;
                if best.as_ref().is_none_or(|(bc, bw)| c > *bc || (c == *bc && w < *bw)) {
                    best = Some((c, w));
                }
            }
            let (count, witness) = best.unwrap();
            let found = search.exhaustive(k);
            assert_eq!((found.eval.count, found.indices), (count, witness), "k={k}");
        }
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let src = example_6_1(4).unwrap();
        let base = config(24, 4000);
        let seq = WindowSearch::new(&src, &base.clone().with_parallelism(Parallelism::Sequential)).unwrap();
        let par = WindowSearch::new(&src, &base.with_parallelism(Parallelism::Threads(3))).unwrap();
        for k in 1..=4 {
            assert_eq!(seq.certify(k).unwrap(), par.certify(k).unwrap());
        }
    }

    #[test]
    fn greedy_and_hybrid_never_beat_exhaustive() {
        let src = example_6_3();
        let search = WindowSearch::new(&src, &config(20, 4000)).unwrap();
        for k in 1..=4 {
            let ex = search.certify_with(k, Strategy::Exhaustive).unwrap().value;
            let gr = search.certify_with(k, Strategy::Greedy).unwrap();
            let hy = search.certify_with(k, Strategy::Hybrid(2)).unwrap();
            assert!(gr.value <= ex && hy.value <= ex);
            assert_eq!(gr.witness.size(), k);
            assert_eq!(hy.witness.size(), k);
        }
    }

    #[test]
    fn filter_restricts_witness() {
        let src = example_6_3();
        let cfg = config(30, 4000).with_filter("3:0,1".parse().unwrap());
        let cert = pattern_complexity(&src, 3, &cfg).unwrap();
        assert!(cert.witness.indices().iter().all(|h| h % 3 != 2));
    }

    #[test]
    fn periodic_is_small_and_horizon_checked() {
        let cert = pattern_complexity(&periodic_source(&[0, 1]).unwrap(), 3, &config(30, 1000)).unwrap();
        assert_eq!(cert.value, 2);
        assert_eq!(
            pattern_complexity(&fibonacci(), 5, &config(3, 1000)).unwrap_err(),
            Error::HorizonTooSmall { horizon: 3, k: 5 }
        );
    }
}
