use crate::seqcore::{observed_symbols, Alphabet, Sequence, SequenceSource, SourceKind, Symbol};
use crate::{Error, Result};

/// A Toeplitz pattern entry: a symbol, or `None` for a hole.
pub type PatternCell = Option<Symbol>;

/// Parses a pattern such as `"0?1?"`; `?` marks a hole, digits are symbols.
pub fn parse_pattern(text: &str) -> Result<Vec<PatternCell>> {
    text.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '?' => Ok(None),
            d => d
                .to_digit(10)
                .map(|v| Some(v as Symbol))
                .ok_or_else(|| Error::InvalidPattern(format!("unexpected character {d:?}"))),
        })
        .collect()
}

#[derive(Debug)]
struct Toeplitz {
    alphabet: Alphabet,
    pattern: Vec<PatternCell>,
    // For a hole at pattern position i, the number of holes before i.
    hole_rank: Vec<usize>,
    holes: usize,
}

impl Sequence for Toeplitz {
    fn at(&self, mut n: usize) -> Symbol {
        let p = self.pattern.len();
        loop {
            let i = n % p;
            match self.pattern[i] {
                Some(s) => return s,
                // Holes are refilled by the same pattern, read along the
                // subsequence of hole positions.
                None => n = self.hole_rank[i] + self.holes * (n / p),
            }
        }
    }

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn kind(&self) -> SourceKind {
        SourceKind::Toeplitz
    }
}

/// The Toeplitz word of `pattern`: write the pattern periodically, then fill
/// the remaining holes, in order, with the same construction.
///
/// The first cell must be a symbol; otherwise position 0 is never filled.
pub fn toeplitz_source(pattern: &[PatternCell]) -> Result<SequenceSource> {
    if pattern.len() < 2 {
        return Err(Error::InvalidPattern("pattern length must be at least 2".into()));
    }
    let symbols: Vec<Symbol> = pattern.iter().flatten().copied().collect();
    if symbols.is_empty() {
        return Err(Error::InvalidPattern("pattern has no symbols; filling never terminates".into()));
    }
    if symbols.len() == pattern.len() {
        return Err(Error::InvalidPattern("pattern has no holes".into()));
    }
    if pattern[0].is_none() {
        return Err(Error::InvalidPattern("pattern must not start with a hole; position 0 is never filled".into()));
    }
    let mut hole_rank = vec![0; pattern.len()];
    let mut holes = 0;
    for (i, cell) in pattern.iter().enumerate() {
        if cell.is_none() {
            hole_rank[i] = holes;
            holes += 1;
        }
    }
    Ok(SequenceSource::new(Toeplitz {
        alphabet: Alphabet::new(observed_symbols(&symbols))?,
        pattern: pattern.to_vec(),
        hole_rank,
        holes,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    // Pass-by-pass filling of a finite array.
    fn fill_oracle(pattern: &[PatternCell], len: usize) -> Vec<Symbol> {
        let mut out: Vec<PatternCell> = vec![None; len];
        while out.iter().any(Option::is_none) {
            let holes: Vec<usize> = (0..len).filter(|&i| out[i].is_none()).collect();
            for (j, pos) in holes.into_iter().enumerate() {
                out[pos] = pattern[j % pattern.len()];
            }
        }
        out.into_iter().map(Option::unwrap).collect()
    }

    #[test]
    fn paperfolding_style_pattern() {
        let p = parse_pattern("0?1?").unwrap();
        let s = toeplitz_source(&p).unwrap();
        assert_eq!(s.prefix(8).unwrap(), vec![0, 0, 1, 0, 0, 1, 1, 0]);
        assert_eq!(s.prefix(4096).unwrap(), fill_oracle(&p, 4096));
    }

    #[test]
    fn single_symbol_pattern_is_constant() {
        let s = toeplitz_source(&parse_pattern("1?").unwrap()).unwrap();
        assert!(s.prefix(1000).unwrap().iter().all(|&x| x == 1));
    }

    #[test]
    fn matches_oracle_on_several_patterns() {
        for text in ["01?", "0?1", "0??1", "10?2?", "1?0?"] {
            let p = parse_pattern(text).unwrap();
            let s = toeplitz_source(&p).unwrap();
            assert_eq!(s.prefix(3000).unwrap(), fill_oracle(&p, 3000), "pattern {text}");
        }
    }

    #[test]
    fn rejects_degenerate_patterns() {
        assert!(toeplitz_source(&parse_pattern("??").unwrap()).is_err());
        assert!(toeplitz_source(&parse_pattern("01").unwrap()).is_err());
        assert!(toeplitz_source(&parse_pattern("?1").unwrap()).is_err());
        assert!(toeplitz_source(&parse_pattern("?").unwrap()).is_err());
        assert!(parse_pattern("0x").is_err());
    }
}
