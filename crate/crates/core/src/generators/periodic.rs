use crate::seqcore::{observed_symbols, Alphabet, Sequence, SequenceSource, SourceKind, Symbol};
use crate::{Error, Result};

#[derive(Debug)]
struct Periodic {
    alphabet: Alphabet,
    word: Vec<Symbol>,
}

impl Sequence for Periodic {
    fn at(&self, n: usize) -> Symbol {
        self.word[n % self.word.len()]
    }

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn kind(&self) -> SourceKind {
        SourceKind::Periodic
    }

    fn fill(&self, start: usize, out: &mut [Symbol]) {
        let p = self.word.len();
        let mut i = start % p;
        for slot in out {
            *slot = self.word[i];
            i += 1;
            if i == p {
                i = 0;
            }
        }
    }
}

/// `word` repeated forever; the alphabet is the set of symbols in `word`.
pub fn periodic_source(word: &[Symbol]) -> Result<SequenceSource> {
    if word.is_empty() {
        return Err(Error::InvalidArgument("periodic word must be non-empty".into()));
    }
    periodic_source_over(Alphabet::new(observed_symbols(word))?, word)
}

pub fn periodic_source_over(alphabet: Alphabet, word: &[Symbol]) -> Result<SequenceSource> {
    if word.is_empty() {
        return Err(Error::InvalidArgument("periodic word must be non-empty".into()));
    }
    if let Some(s) = word.iter().find(|s| !alphabet.contains(**s)) {
        return Err(Error::InvalidArgument(format!("symbol {s} is not in alphabet {alphabet}")));
    }
    Ok(SequenceSource::new(Periodic { alphabet, word: word.to_vec() }))
}

/// The constant sequence `c^∞`.
pub fn constant_source(symbol: Symbol) -> SequenceSource {
    periodic_source(&[symbol]).expect("single-symbol word is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcore::{detect_least_period, tau_words, Periodicity, Window, Word};

    #[test]
    fn empty_word_rejected() {
        assert!(periodic_source(&[]).is_err());
    }

    #[test]
    fn constant_has_period_one() {
        let s = periodic_source(&[0]).unwrap();
        assert_eq!(
            detect_least_period(&s, 100, 10).unwrap(),
            Some(Periodicity { preperiod: 0, period: 1 })
        );
    }

    #[test]
    fn period_two_words() {
        let s = periodic_source(&[0, 1]).unwrap();
        let ws = tau_words(&s, &Window::block(2).unwrap(), 100).unwrap();
        assert_eq!(ws.sorted(), vec![Word(vec![0, 1]), Word(vec![1, 0])]);
    }

    #[test]
    fn non_primitive_word_has_least_period() {
        let s = periodic_source(&[0, 1, 0, 1]).unwrap();
        let p = detect_least_period(&s, 200, 50).unwrap().unwrap();
        assert_eq!(p.period, 2);
        assert_eq!(s.prefix(50).unwrap(), periodic_source(&[0, 1]).unwrap().prefix(50).unwrap());
    }

    #[test]
    fn fill_wraps() {
        let s = periodic_source(&[0, 1, 2]).unwrap();
        assert_eq!(s.segment(4, 5).unwrap(), vec![1, 2, 0, 1, 2]);
    }
}
