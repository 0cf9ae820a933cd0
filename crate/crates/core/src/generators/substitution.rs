use std::sync::RwLock;

use crate::seqcore::{Alphabet, Sequence, SequenceSource, SourceKind, Symbol};
use crate::{Error, Result};

/// A substitution `σ` on an alphabet together with the seed of its fixed point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstitutionRule {
    alphabet: Alphabet,
    images: Vec<Vec<Symbol>>,
    seed: Symbol,
}

impl SubstitutionRule {
    /// `images[i]` is the image of the i-th alphabet symbol.
    ///
    /// The image of `seed` must start with `seed` and have length at least 2,
    /// so the fixed point `lim σⁿ(seed)` exists and is infinite.
    pub fn new(alphabet: Alphabet, images: Vec<Vec<Symbol>>, seed: Symbol) -> Result<Self> {
        if images.len() != alphabet.size() {
            return Err(Error::InvalidRule(format!(
                "{} images given for an alphabet of size {}",
                images.len(),
                alphabet.size()
            )));
        }
        for (i, image) in images.iter().enumerate() {
            if image.is_empty() {
                return Err(Error::InvalidRule(format!("image of {} is empty", alphabet.symbols()[i])));
            }
            if let Some(s) = image.iter().find(|s| !alphabet.contains(**s)) {
                return Err(Error::InvalidRule(format!("image symbol {s} is not in {alphabet}")));
            }
        }
        let seed_index = alphabet
            .index_of(seed)
            .ok_or_else(|| Error::InvalidRule(format!("seed {seed} is not in {alphabet}")))?;
        let seed_image = &images[seed_index];
        if seed_image[0] != seed || seed_image.len() < 2 {
            return Err(Error::InvalidRule(
                "image of the seed must begin with the seed and have length at least 2".into(),
            ));
        }
        Ok(SubstitutionRule { alphabet, images, seed })
    }

    pub fn from_pairs(pairs: &[(Symbol, &[Symbol])], seed: Symbol) -> Result<Self> {
        let alphabet = Alphabet::new(pairs.iter().map(|(s, _)| *s))?;
        let mut images = vec![Vec::new(); alphabet.size()];
        for (s, image) in pairs {
            images[alphabet.index_of(*s).expect("built from pairs")] = image.to_vec();
        }
        SubstitutionRule::new(alphabet, images, seed)
    }

    /// `0 → 01, 1 → 0`.
    pub fn fibonacci() -> Self {
        Self::from_pairs(&[(0, &[0, 1]), (1, &[0])], 0).expect("valid rule")
    }

    /// `0 → 01, 1 → 10`.
    pub fn thue_morse() -> Self {
        Self::from_pairs(&[(0, &[0, 1]), (1, &[1, 0])], 0).expect("valid rule")
    }

    /// `0 → 01, 1 → 02, 2 → 0`.
    pub fn tribonacci() -> Self {
        Self::from_pairs(&[(0, &[0, 1]), (1, &[0, 2]), (2, &[0])], 0).expect("valid rule")
    }

    /// `0 → 01, 1 → 00`.
    pub fn period_doubling() -> Self {
        Self::from_pairs(&[(0, &[0, 1]), (1, &[0, 0])], 0).expect("valid rule")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn seed(&self) -> Symbol {
        self.seed
    }

    pub fn image(&self, s: Symbol) -> &[Symbol] {
        &self.images[self.alphabet.index_of(s).expect("symbol in alphabet")]
    }

    /// `σ(word)`.
    pub fn apply(&self, word: &[Symbol]) -> Vec<Symbol> {
        word.iter().flat_map(|&s| self.image(s).iter().copied()).collect()
    }
}

#[derive(Debug)]
struct Expansion {
    symbols: Vec<Symbol>,
    // Symbols of the fixed point already substituted into `symbols`.
    consumed: usize,
}

/// Fixed point `u = σ(u)`, produced by reading `u` left to right and
/// appending images. Reads stay ahead of writes because the seed image has
/// length at least 2.
#[derive(Debug)]
struct FixedPoint {
    rule: SubstitutionRule,
    images: Vec<Vec<Symbol>>,
    cache: RwLock<Expansion>,
}

impl FixedPoint {
    fn ensure(&self, len: usize) {
        if self.cache.read().expect("cache lock").symbols.len() >= len {
            return;
        }
        let mut cache = self.cache.write().expect("cache lock");
        let target = len.max(2 * cache.symbols.len());
        while cache.symbols.len() < target {
            let s = cache.symbols[cache.consumed];
            cache.consumed += 1;
            let image = &self.images[s as usize];
            if cache.consumed == 1 {
                // The seed is already in place.
                cache.symbols.extend_from_slice(&image[1..]);
            } else {
                cache.symbols.extend_from_slice(image);
            }
        }
    }
}

impl Sequence for FixedPoint {
    fn at(&self, n: usize) -> Symbol {
        self.ensure(n + 1);
        self.cache.read().expect("cache lock").symbols[n]
    }

    fn alphabet(&self) -> &Alphabet {
        self.rule.alphabet()
    }

    fn kind(&self) -> SourceKind {
        SourceKind::Substitution
    }

    fn fill(&self, start: usize, out: &mut [Symbol]) {
        self.ensure(start + out.len());
        let cache = self.cache.read().expect("cache lock");
        out.copy_from_slice(&cache.symbols[start..start + out.len()]);
    }
}

/// The one-sided fixed point of `rule` starting with its seed.
pub fn substitution_source(rule: &SubstitutionRule) -> SequenceSource {
    let mut images = vec![Vec::new(); 256];
    for &s in rule.alphabet.symbols() {
        images[s as usize] = rule.image(s).to_vec();
    }
    SequenceSource::new(FixedPoint {
        rule: rule.clone(),
        images,
        cache: RwLock::new(Expansion { symbols: vec![rule.seed], consumed: 0 }),
    })
}
