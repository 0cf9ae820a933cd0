//! Generator specification files (TOML).
//!
//! ```toml
//! kind = "substitution"
//! alphabet = ["a", "b"]        # optional display names
//! rule = { a = "ab", b = "a" }
//! seed = "a"
//! ```
//!
//! Recognised keys: `kind`, `alphabet`, `rule`, `seed`, `slope_cf`,
//! `intercept`, `cuts`, `pattern`, `m`, `residues`, plus `name`/`ell` for
//! named families, `tail` for literals, `length_guarantee` for rotations and
//! `shift` for any kind.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{
    interleave_source, named_source, parse_pattern, periodic_source_over, rotation_source,
    substitution_source, toeplitz_source, Cut, InterleaveSpec, ResidueSpec, RotationCoding, SlopeAffine,
    SubstitutionRule,
};
use crate::seqcore::{observed_symbols, Alphabet, LiteralSource, SequenceSource, Symbol};
use crate::{Error, Result};

const DEFAULT_LENGTH_GUARANTEE: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    Periodic,
    Substitution,
    Rotation,
    Toeplitz,
    Interleave,
    Literal,
    Named,
}

/// A symbol given either as an integer or by its display name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SymbolText {
    Int(u8),
    Name(String),
}

/// A word given as a string of single-character symbols or a list of integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WordText {
    Text(String),
    Ints(Vec<u8>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutSpec {
    pub at: String,
    pub label: SymbolText,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ResidueEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant: Option<SymbolText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub periodic: Option<WordText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<Box<GeneratorSpec>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<BTreeMap<String, WordText>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<SymbolText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slope_cf: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intercept: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cuts: Option<Vec<CutSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residues: Option<Vec<ResidueEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length_guarantee: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<usize>,
}

fn missing(kind: &str, field: &str) -> Error {
    Error::Parse(format!("kind {kind:?} requires field {field:?}"))
}

struct Names(Option<Alphabet>);

impl Names {
    fn symbol(&self, text: &SymbolText) -> Result<Symbol> {
        match (text, &self.0) {
            (SymbolText::Int(v), _) => Ok(*v),
            (SymbolText::Name(n), Some(a)) => {
                a.lookup(n).ok_or_else(|| Error::Parse(format!("symbol {n:?} not in alphabet {a}")))
            }
            (SymbolText::Name(n), None) => {
                n.parse().map_err(|_| Error::Parse(format!("symbol {n:?} is not an integer and no alphabet names are declared")))
            }
        }
    }

    fn word(&self, text: &WordText) -> Result<Vec<Symbol>> {
        match text {
            WordText::Ints(v) => Ok(v.clone()),
            WordText::Text(s) => s
                .chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| self.symbol(&SymbolText::Name(c.to_string())))
                .collect(),
        }
    }

    fn alphabet_for(&self, used: &[Symbol]) -> Result<Alphabet> {
        match &self.0 {
            Some(a) => {
                if let Some(s) = used.iter().find(|s| !a.contains(**s)) {
                    return Err(Error::Parse(format!("symbol {s} not in alphabet {a}")));
                }
                Ok(a.clone())
            }
            None => Alphabet::new(observed_symbols(used)),
        }
    }
}

impl GeneratorSpec {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn named(name: &str) -> Self {
        GeneratorSpec {
            kind: GeneratorKind::Named,
            alphabet: None,
            rule: None,
            seed: None,
            slope_cf: None,
            intercept: None,
            cuts: None,
            pattern: None,
            m: None,
            residues: None,
            name: Some(name.to_string()),
            ell: None,
            tail: None,
            length_guarantee: None,
            shift: None,
        }
    }

    pub fn build(&self) -> Result<SequenceSource> {
        let names = Names(match &self.alphabet {
            Some(n) => Some(Alphabet::with_names(n.iter().cloned())?),
            None => None,
        });
        let source = match self.kind {
            GeneratorKind::Periodic => {
                let word = names.word(&WordText::Text(self.pattern.clone().ok_or_else(|| missing("periodic", "pattern"))?))?;
                if word.is_empty() {
                    return Err(Error::InvalidArgument("periodic word must be non-empty".into()));
                }
                periodic_source_over(names.alphabet_for(&word)?, &word)?
            }
            GeneratorKind::Substitution => {
                let rule = self.rule.as_ref().ok_or_else(|| missing("substitution", "rule"))?;
                let mut pairs: Vec<(Symbol, Vec<Symbol>)> = Vec::new();
                for (k, v) in rule {
                    pairs.push((names.symbol(&SymbolText::Name(k.clone()))?, names.word(v)?));
                }
                let keys: Vec<Symbol> = pairs.iter().map(|p| p.0).collect();
                let alphabet = match &names.0 {
                    Some(a) => a.clone(),
                    None => Alphabet::new(keys.iter().copied())?,
                };
                let mut images = vec![Vec::new(); alphabet.size()];
                for (s, image) in pairs {
                    let i = alphabet
                        .index_of(s)
                        .ok_or_else(|| Error::InvalidRule(format!("rule symbol {s} not in {alphabet}")))?;
                    images[i] = image;
                }
                let seed = match &self.seed {
                    Some(s) => names.symbol(s)?,
                    None => alphabet.symbols()[0],
                };
                substitution_source(&SubstitutionRule::new(alphabet, images, seed)?)
            }
            GeneratorKind::Rotation => {
                let slope_cf = self.slope_cf.clone().ok_or_else(|| missing("rotation", "slope_cf"))?;
                let intercept: SlopeAffine = self.intercept.as_deref().unwrap_or("0").parse()?;
                let cuts = self
                    .cuts
                    .as_ref()
                    .ok_or_else(|| missing("rotation", "cuts"))?
                    .iter()
                    .map(|c| Ok(Cut { at: c.at.parse()?, label: names.symbol(&c.label)? }))
                    .collect::<Result<Vec<_>>>()?;
                let coding = RotationCoding { slope_cf, intercept, cuts };
                rotation_source(&coding, self.length_guarantee.unwrap_or(DEFAULT_LENGTH_GUARANTEE))?
            }
            GeneratorKind::Toeplitz => {
                let text = self.pattern.as_deref().ok_or_else(|| missing("toeplitz", "pattern"))?;
                let cells = match &names.0 {
                    None => parse_pattern(text)?,
                    Some(_) => text
                        .chars()
                        .filter(|c| !c.is_whitespace())
                        .map(|c| if c == '?' { Ok(None) } else { names.symbol(&SymbolText::Name(c.to_string())).map(Some) })
                        .collect::<Result<Vec<_>>>()?,
                };
                toeplitz_source(&cells)?
            }
            GeneratorKind::Interleave => {
                let entries = self.residues.as_ref().ok_or_else(|| missing("interleave", "residues"))?;
                if let Some(m) = self.m {
                    if m != entries.len() {
                        return Err(Error::Parse(format!("m = {m} but {} residues listed", entries.len())));
                    }
                }
                let residues = entries
                    .iter()
                    .map(|e| match (&e.constant, &e.periodic, &e.source) {
                        (Some(c), None, None) => Ok(ResidueSpec::Constant(names.symbol(c)?)),
                        (None, Some(w), None) => Ok(ResidueSpec::Periodic(names.word(w)?)),
                        (None, None, Some(s)) => Ok(ResidueSpec::Source(s.build()?)),
                        _ => Err(Error::Parse("each residue needs exactly one of constant, periodic, source".into())),
                    })
                    .collect::<Result<Vec<_>>>()?;
                interleave_source(&InterleaveSpec::new(residues)?)?
            }
            GeneratorKind::Literal => {
                let head = names.word(&WordText::Text(self.pattern.clone().unwrap_or_default()))?;
                let tail = names.word(&WordText::Text(self.tail.clone().unwrap_or_default()))?;
                let used: Vec<Symbol> = head.iter().chain(&tail).copied().collect();
                if used.is_empty() {
                    return Err(missing("literal", "pattern"));
                }
                LiteralSource::with_tail(names.alphabet_for(&used)?, head, tail)?.into_source()
            }
            GeneratorKind::Named => {
                named_source(self.name.as_deref().ok_or_else(|| missing("named", "name"))?, self.ell)?
            }
        };
        Ok(match self.shift {
            Some(t) => source.shift(t),
            None => source,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{example_6_3, fibonacci};

    #[test]
    fn substitution_with_names() {
        let spec = GeneratorSpec::from_toml(
            r#"
kind = "substitution"
alphabet = ["a", "b"]
rule = { a = "ab", b = "a" }
seed = "a"
"#,
        )
        .unwrap();
        assert_eq!(spec.build().unwrap().prefix(300).unwrap(), fibonacci().prefix(300).unwrap());
    }

    #[test]
    fn interleave_of_named_sources() {
        let spec = GeneratorSpec::from_toml(
            r#"
kind = "interleave"
m = 3
[[residues]]
source = { kind = "named", name = "fibonacci" }
[[residues]]
source = { kind = "substitution", rule = { 0 = [0, 1], 1 = [0] }, seed = 0 }
[[residues]]
constant = 2
"#,
        )
        .unwrap();
        assert_eq!(spec.build().unwrap().prefix(600).unwrap(), example_6_3().prefix(600).unwrap());
    }

    #[test]
    fn rotation_spec() {
        let spec = GeneratorSpec::from_toml(
            r#"
kind = "rotation"
slope_cf = [0, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1]
intercept = "2*theta"
cuts = [{ at = "0", label = 1 }, { at = "theta", label = 0 }]
length_guarantee = 5000
"#,
        )
        .unwrap();
        assert_eq!(spec.build().unwrap().prefix(5000).unwrap(), fibonacci().prefix(5000).unwrap());
    }

    #[test]
    fn literal_with_tail_and_shift() {
        let spec = GeneratorSpec::from_toml("kind = \"literal\"\npattern = \"57\"\ntail = \"01\"\nshift = 1\n").unwrap();
        assert_eq!(spec.build().unwrap().prefix(5).unwrap(), vec![7, 0, 1, 0, 1]);
    }

    #[test]
    fn toeplitz_and_periodic() {
        let t = GeneratorSpec::from_toml("kind = \"toeplitz\"\npattern = \"0?1?\"\n").unwrap();
        assert_eq!(t.build().unwrap().prefix(8).unwrap(), vec![0, 0, 1, 0, 0, 1, 1, 0]);
        let p = GeneratorSpec::from_toml("kind = \"periodic\"\npattern = \"012\"\n").unwrap();
        assert_eq!(p.build().unwrap().prefix(4).unwrap(), vec![0, 1, 2, 0]);
    }

    #[test]
    fn errors_are_reported() {
        assert!(GeneratorSpec::from_toml("kind = \"bogus\"").is_err());
        assert!(GeneratorSpec::from_toml("kind = \"periodic\"\nunknown = 1").is_err());
        let s = GeneratorSpec::from_toml("kind = \"substitution\"").unwrap();
        assert!(s.build().is_err());
        let s = GeneratorSpec::from_toml("kind = \"interleave\"\nm = 2\nresidues = [{ constant = 1 }]").unwrap();
        assert!(s.build().is_err());
    }

    #[test]
    fn toml_round_trip() {
        let spec = GeneratorSpec::named("example-6.1");
        let text = spec.to_toml().unwrap();
        assert_eq!(GeneratorSpec::from_toml(&text).unwrap(), spec);
    }
}
