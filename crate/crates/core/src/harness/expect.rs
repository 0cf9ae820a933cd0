use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::decompose::Classification;
use crate::{Error, Result};

/// Expected values read from a golden file:
///
/// ```toml
/// classification = "pattern-sturmian-plus-constants"
/// m = 5
///
/// [values]
/// 2 = 7
/// 3 = 9
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "RawExpectations")]
pub struct Expectations {
    pub values: BTreeMap<usize, usize>,
    pub classification: Option<Classification>,
    pub m: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExpectations {
    #[serde(default)]
    values: BTreeMap<String, usize>,
    classification: Option<Classification>,
    m: Option<usize>,
}

impl TryFrom<RawExpectations> for Expectations {
    type Error = Error;

    fn try_from(raw: RawExpectations) -> Result<Self> {
        let values = raw
            .values
            .into_iter()
            .map(|(k, v)| {
                k.parse::<usize>()
                    .map(|k| (k, v))
                    .map_err(|_| Error::Parse(format!("expected-values key {k:?} is not a window size")))
            })
            .collect::<Result<_>>()?;
        Ok(Expectations { values, classification: raw.classification, m: raw.m })
    }
}

impl Expectations {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(format!("expectations: {e}")))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("cannot read expectations file {}: {e}", path.display())))?;
        Expectations::from_toml(&text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub key: String,
    pub expected: String,
    pub measured: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Comparison {
    pub rows: Vec<ComparisonRow>,
}

impl Comparison {
    pub fn push(&mut self, key: impl Into<String>, expected: impl ToString, measured: Option<impl ToString>) {
        let expected = expected.to_string();
        let measured = measured.map_or_else(|| "(missing)".to_string(), |m| m.to_string());
        let ok = expected == measured;
        self.rows.push(ComparisonRow { key: key.into(), expected, measured, ok });
    }

    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.ok)
    }

    /// Side-by-side table with mismatching rows marked.
    pub fn render_diff(&self) -> String {
        let kw = self.rows.iter().map(|r| r.key.len()).chain([3]).max().unwrap_or(3);
        let ew = self.rows.iter().map(|r| r.expected.len()).chain([8]).max().unwrap_or(8);
        let mw = self.rows.iter().map(|r| r.measured.len()).chain([8]).max().unwrap_or(8);
        let mut out = String::new();
        let mut line = |key: &str, expected: &str, measured: &str, mark: &str| {
            let row = format!("{key:<kw$}  {expected:<ew$}  {measured:<mw$}{mark}");
            out.push_str(row.trim_end());
            out.push('\n');
        };
        line("key", "expected", "measured", "");
        for r in &self.rows {
            line(&r.key, &r.expected, &r.measured, if r.ok { "" } else { "  <-- mismatch" });
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_golden_format() {
        let e = Expectations::from_toml("classification = \"periodic\"\nm = 2\n[values]\n1 = 2\n3 = 2\n").unwrap();
        assert_eq!(e.values, BTreeMap::from([(1, 2), (3, 2)]));
        assert_eq!(e.classification, Some(Classification::Periodic));
        assert_eq!(e.m, Some(2));
        assert!(Expectations::from_toml("[values]\nx = 1\n").is_err());
        assert!(Expectations::from_toml("colour = 1\n").is_err());
    }

    #[test]
    fn diff_marks_mismatches() {
        let mut c = Comparison::default();
        c.push("k=1", 3, Some(3));
        c.push("k=2", 5, Some(6));
        c.push("k=3", 7, None::<usize>);
        assert!(!c.passed());
        let diff = c.render_diff();
        assert!(diff.lines().nth(1).unwrap().ends_with('3'));
        assert!(diff.lines().nth(2).unwrap().ends_with("<-- mismatch"));
        assert!(diff.contains("(missing)"));
    }
}
