use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::par::{self, Parallelism};
use crate::seqcore::{eventual_period, observed_symbols, Periodicity, SequenceSource, Symbol, Window, Word};
use crate::{Error, Result};

/// Graph on residues `0..m` with an edge wherever observed alphabets meet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueGraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub components: Vec<Vec<usize>>,
}

impl ResidueGraph {
    pub fn from_alphabets(alphabets: &[Vec<Symbol>]) -> Self {
        let n = alphabets.len();
        let mut edges = Vec::new();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for i in 0..n {
            for j in i + 1..n {
                if alphabets[i].iter().any(|s| alphabets[j].binary_search(s).is_ok()) {
                    edges.push((i, j));
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
        let mut components: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for v in 0..n {
            let root = find(&mut parent, v);
            if slot[root] == usize::MAX {
                slot[root] = components.len();
                components.push(Vec::new());
            }
            components[slot[root]].push(v);
        }
        ResidueGraph { vertices: n, edges, components }
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }
}

/// Observed alphabet of each residue `α^(i)` over `scan_length` terms.
pub(crate) fn residue_alphabets(source: &SequenceSource, m: usize, scan_length: usize) -> Result<Vec<Vec<Symbol>>> {
    (0..m).map(|i| Ok(observed_symbols(&source.residue(m, i)?.prefix(scan_length)?))).collect()
}

pub fn residue_graph(source: &SequenceSource, m: usize, scan_length: usize) -> Result<ResidueGraph> {
    if m == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    Ok(ResidueGraph::from_alphabets(&residue_alphabets(source, m, scan_length)?))
}

/// A letter subset whose indicator is eventually periodic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionHit {
    pub subset: Vec<Symbol>,
    pub preperiod: usize,
    pub period: usize,
}

pub const MAX_PROJECTION_ALPHABET: usize = 16;

/// First proper non-empty letter subset (by size, then lexicographically)
/// whose indicator is eventually periodic on the prefix.
pub fn periodic_by_projection(
    source: &SequenceSource,
    scan_length: usize,
    max_period: usize,
) -> Result<Option<ProjectionHit>> {
    periodic_by_projection_with(source, scan_length, max_period, Parallelism::Auto)
}

pub fn periodic_by_projection_with(
    source: &SequenceSource,
    scan_length: usize,
    max_period: usize,
    parallelism: Parallelism,
) -> Result<Option<ProjectionHit>> {
    if max_period == 0 || scan_length < 2 * max_period {
        return Err(Error::InsufficientScan(format!(
            "scan length {scan_length} must be at least twice the maximum period {max_period} (> 0)"
        )));
    }
    let prefix = source.prefix(scan_length)?;
    let letters = observed_symbols(&prefix);
    let ell = letters.len();
    if ell < 2 {
        return Err(Error::InvalidArgument(format!("observed alphabet has {ell} letter(s); need at least 2")));
    }
    if ell > MAX_PROJECTION_ALPHABET {
        return Err(Error::AlphabetTooLarge(ell));
    }
    let mut subsets: Vec<u32> = (1u32..(1 << ell) - 1).collect();
    // Size first, then lexicographic on the ascending letter lists.
    subsets.sort_by_key(|&mask| {
        let members: Vec<usize> = (0..ell).filter(|b| mask & (1 << b) != 0).collect();
        (members.len(), members)
    });
    let mut slot = [u32::MAX; 256];
    for (i, &b) in letters.iter().enumerate() {
        slot[b as usize] = i as u32;
    }
    let dense: Vec<u32> = prefix.iter().map(|&s| slot[s as usize]).collect();
    Ok(par::find_first(&subsets, parallelism, |&mask| {
        let indicator: Vec<bool> = dense.iter().map(|&d| mask & (1 << d) != 0).collect();
        eventual_period(&indicator, max_period).map(|Periodicity { preperiod, period }| ProjectionHit {
            subset: (0..ell).filter(|b| mask & (1 << b) != 0).map(|b| letters[b]).collect(),
            preperiod,
            period,
        })
    }))
}

/// Word sets `C_i(τ)` of start positions `n ≡ i (mod m)`, `n < scan_length`.
pub fn class_word_sets(
    source: &SequenceSource,
    window: &Window,
    m: usize,
    scan_length: usize,
) -> Result<Vec<HashSet<Word>>> {
    if m == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let prefix = source.prefix(scan_length + window.max_index())?;
    let mut classes = vec![HashSet::new(); m];
    for n in 0..scan_length {
        classes[n % m].insert(Word(window.indices().iter().map(|&i| prefix[n + i]).collect()));
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{example_6_1, example_6_2, example_6_3, fibonacci, periodic_source};

    #[test]
    fn graphs_of_examples() {
        let g = residue_graph(&example_6_3(), 3, 20_000).unwrap();
        assert_eq!(g.edges, vec![(0, 1)]);
        assert_eq!(g.components, vec![vec![0, 1], vec![2]]);
        let g = residue_graph(&example_6_1(3).unwrap(), 2, 20_000).unwrap();
        assert!(g.edges.is_empty());
        assert_eq!(g.components, vec![vec![0], vec![1]]);
        let g = residue_graph(&fibonacci(), 1, 1000).unwrap();
        assert_eq!((g.vertices, g.components.len()), (1, 1));
    }

    #[test]
    fn components_merge_transitively() {
        let g = ResidueGraph::from_alphabets(&[vec![0], vec![1, 2], vec![0, 2], vec![5]]);
        assert_eq!(g.edges, vec![(0, 2), (1, 2)]);
        assert_eq!(g.components, vec![vec![0, 1, 2], vec![3]]);
    }

    #[test]
    fn projections() {
        let hit = periodic_by_projection(&example_6_2(), 20_000, 64).unwrap().unwrap();
        assert_eq!((hit.subset, hit.period), (vec![2], 5));
        assert_eq!(periodic_by_projection(&fibonacci(), 20_000, 64).unwrap(), None);
        let hit = periodic_by_projection(&periodic_source(&[0, 1, 2]).unwrap(), 1000, 10).unwrap().unwrap();
        assert_eq!((hit.subset, hit.preperiod, hit.period), (vec![0], 0, 3));
    }

    #[test]
    fn projection_rejects_unary() {
        assert!(periodic_by_projection(&periodic_source(&[4]).unwrap(), 100, 10).is_err());
    }

    #[test]
    fn classes_union_to_full_set() {
        let src = example_6_3();
        let w = Window::new(vec![0, 3, 7]).unwrap();
        let classes = class_word_sets(&src, &w, 3, 3000).unwrap();
        let union: HashSet<Word> = classes.into_iter().flatten().collect();
        let full = crate::seqcore::tau_words(&src, &w, 3000).unwrap();
        assert_eq!(&union, full.words());
    }
}
