use crate::seqcore::{Alphabet, Sequence, SequenceSource, SourceKind, Symbol};
use crate::{Error, Result};

/// One residue of an interleaving.
#[derive(Debug, Clone)]
pub enum ResidueSpec {
    Constant(Symbol),
    Periodic(Vec<Symbol>),
    Source(SequenceSource),
}

impl ResidueSpec {
    fn at(&self, q: usize) -> Symbol {
        match self {
            ResidueSpec::Constant(s) => *s,
            ResidueSpec::Periodic(w) => w[q % w.len()],
            ResidueSpec::Source(s) => s.at(q),
        }
    }

    fn alphabet(&self) -> Result<Alphabet> {
        match self {
            ResidueSpec::Constant(s) => Alphabet::new([*s]),
            ResidueSpec::Periodic(w) => Alphabet::new(crate::seqcore::observed_symbols(w)),
            ResidueSpec::Source(s) => Ok(s.alphabet().clone()),
        }
    }

    fn known_len(&self) -> Option<usize> {
        match self {
            ResidueSpec::Source(s) => s.known_len(),
            _ => None,
        }
    }
}

/// `m` residue sequences zipped together: position `m·q + i` reads residue
/// `i` at `q`.
#[derive(Debug, Clone)]
pub struct InterleaveSpec {
    residues: Vec<ResidueSpec>,
}

impl InterleaveSpec {
    pub fn new(residues: Vec<ResidueSpec>) -> Result<Self> {
        if residues.is_empty() {
            return Err(Error::InvalidArgument("interleaving needs at least one residue".into()));
        }
        if residues.iter().any(|r| matches!(r, ResidueSpec::Periodic(w) if w.is_empty())) {
            return Err(Error::InvalidArgument("periodic residue word must be non-empty".into()));
        }
        Ok(InterleaveSpec { residues })
    }

    pub fn modulus(&self) -> usize {
        self.residues.len()
    }

    pub fn residues(&self) -> &[ResidueSpec] {
        &self.residues
    }
}

#[derive(Debug)]
struct Interleave {
    alphabet: Alphabet,
    residues: Vec<ResidueSpec>,
}

impl Sequence for Interleave {
    fn at(&self, n: usize) -> Symbol {
        let m = self.residues.len();
        self.residues[n % m].at(n / m)
    }

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn kind(&self) -> SourceKind {
        SourceKind::Interleave
    }

    fn known_len(&self) -> Option<usize> {
        let m = self.residues.len();
        self.residues
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.known_len().map(|l| l * m + i))
            .min()
    }

    fn fill(&self, start: usize, out: &mut [Symbol]) {
        let m = self.residues.len();
        if out.is_empty() {
            return;
        }
        let end = start + out.len();
        for (i, residue) in self.residues.iter().enumerate() {
            // first n >= start with n ≡ i (mod m)
            let first = start + (i + m - start % m) % m;
            if first >= end {
                continue;
            }
            let count = (end - first).div_ceil(m);
            let q0 = first / m;
            let values: Vec<Symbol> = match residue {
                ResidueSpec::Source(s) => {
                    let mut v = vec![0; count];
                    s.fill(q0, &mut v);
                    v
                }
                other => (0..count).map(|j| other.at(q0 + j)).collect(),
            };
            for (j, v) in values.into_iter().enumerate() {
                out[first - start + j * m] = v;
            }
        }
    }
}

pub fn interleave_source(spec: &InterleaveSpec) -> Result<SequenceSource> {
    let mut alphabet = spec.residues[0].alphabet()?;
    for r in &spec.residues[1..] {
        alphabet = alphabet.union(&r.alphabet()?);
    }
    Ok(SequenceSource::new(Interleave { alphabet, residues: spec.residues.clone() }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{periodic_source, substitution_source, SubstitutionRule};

    #[test]
    fn single_residue_is_identity() {
        let x = substitution_source(&SubstitutionRule::fibonacci());
        let s = interleave_source(&InterleaveSpec::new(vec![ResidueSpec::Source(x.clone())]).unwrap()).unwrap();
        assert_eq!(s.prefix(500).unwrap(), x.prefix(500).unwrap());
    }

    #[test]
    fn restrict_inverts_interleave() {
        let x = substitution_source(&SubstitutionRule::thue_morse());
        let spec = InterleaveSpec::new(vec![
            ResidueSpec::Source(x.clone()),
            ResidueSpec::Periodic(vec![3, 4, 4]),
            ResidueSpec::Constant(2),
        ])
        .unwrap();
        let s = interleave_source(&spec).unwrap();
        assert_eq!(s.alphabet().symbols(), &[0, 1, 2, 3, 4]);
        assert_eq!(s.residue(3, 0).unwrap().prefix(400).unwrap(), x.prefix(400).unwrap());
        assert_eq!(
            s.residue(3, 1).unwrap().prefix(400).unwrap(),
            periodic_source(&[3, 4, 4]).unwrap().prefix(400).unwrap()
        );
        assert!(s.residue(3, 2).unwrap().prefix(400).unwrap().iter().all(|&c| c == 2));
    }

    #[test]
    fn bulk_fill_matches_pointwise() {
        let x = substitution_source(&SubstitutionRule::fibonacci());
        let spec = InterleaveSpec::new(vec![
            ResidueSpec::Source(x.clone()),
            ResidueSpec::Constant(2),
            ResidueSpec::Source(x),
            ResidueSpec::Periodic(vec![3, 2]),
        ])
        .unwrap();
        let s = interleave_source(&spec).unwrap();
        for start in [0, 1, 5, 17] {
            let bulk = s.segment(start, 301).unwrap();
            let single: Vec<Symbol> = (start..start + 301).map(|n| s.at(n)).collect();
            assert_eq!(bulk, single);
        }
    }

    #[test]
    fn rejects_empty() {
        assert!(InterleaveSpec::new(vec![]).is_err());
        assert!(InterleaveSpec::new(vec![ResidueSpec::Periodic(vec![])]).is_err());
    }
}
