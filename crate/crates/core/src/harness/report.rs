use std::collections::BTreeMap;

use serde::Serialize;

use super::expect::Comparison;
use super::verify::SuiteSummary;
use super::OutputFormat;
use crate::complexity::{ComplexityCertificate, Exactness, Strategy};
use crate::decompose::{Classification, DecompositionReport, MaskSummary, ProjectionHit, ResidueGraph};
use crate::seqcore::{Symbol, Window};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplexityRow {
    pub k: usize,
    pub value: usize,
    pub witness: Window,
    pub exactness: Exactness,
    pub stable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper_bound: Option<usize>,
    /// `value ≤ 2k − 1`, the signature of an eventually periodic sequence.
    pub periodic_signature: bool,
    pub windows_evaluated: u64,
    pub unstable_windows: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub words: Option<Vec<String>>,
}

impl ComplexityRow {
    pub fn new(cert: &ComplexityCertificate, upper_bound: Option<usize>) -> Self {
        ComplexityRow {
            k: cert.k,
            value: cert.value,
            witness: cert.witness.clone(),
            exactness: cert.exactness,
            stable: cert.stable,
            upper_bound,
            periodic_signature: cert.value < 2 * cert.k,
            windows_evaluated: cert.windows_evaluated,
            unstable_windows: cert.unstable_windows,
            words: cert.words.as_ref().map(|ws| ws.iter().map(|w| w.to_string()).collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplexityReport {
    pub source: String,
    pub strategy: Strategy,
    pub horizon: usize,
    pub scan_length: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<Classification>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub rows: Vec<ComplexityRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecomposeReport {
    pub source: String,
    pub scan_length: usize,
    pub max_period: usize,
    /// Every observed letter with its indicator period, `null` when not singular.
    pub letters: BTreeMap<Symbol, Option<usize>>,
    pub m: usize,
    pub mask: MaskSummary,
    pub residue_alphabets: Vec<Vec<Symbol>>,
    pub graph: ResidueGraph,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub projection: Option<ProjectionHit>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRow {
    pub k: usize,
    pub upper_bound: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassifyReport {
    pub source: String,
    #[serde(flatten)]
    pub report: DecompositionReport,
    pub structural_bounds: Vec<BoundRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharedRow {
    pub k: usize,
    pub window: Option<Window>,
    pub count_a: Option<usize>,
    pub count_b: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharedWindowReport {
    pub source_a: String,
    pub source_b: String,
    pub horizon: usize,
    pub scan_length: usize,
    pub rows: Vec<SharedRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecurrenceRow {
    pub length: usize,
    /// `null` when the prefix occurs only once in the scan.
    pub max_gap: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecurrenceReport {
    pub source: String,
    pub scan_length: usize,
    pub rows: Vec<RecurrenceRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "task", rename_all = "kebab-case")]
pub enum Report {
    Complexity(ComplexityReport),
    Decompose(DecomposeReport),
    Classify(ClassifyReport),
    SharedWindow(SharedWindowReport),
    Recurrence(RecurrenceReport),
    Verify(SuiteSummary),
}

/// A report plus the expectation comparison, when one was requested.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Document {
    #[serde(flatten)]
    pub report: Report,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expectations: Option<Comparison>,
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

fn letters(symbols: &[Symbol]) -> String {
    symbols.iter().map(Symbol::to_string).collect::<Vec<_>>().join(" ")
}

struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(&self.header).map_err(io)?;
        for row in &self.rows {
            w.write_record(row).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }

    fn text(&self) -> String {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.len()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let line = |cells: Vec<&str>| -> String {
            let joined: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
            joined.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(self.header.clone());
        for row in &self.rows {
            out.push_str(&line(row.iter().map(String::as_str).collect()));
        }
        out
    }
}

impl Report {
    fn table(&self) -> Table {
        match self {
            Report::Complexity(r) => Table {
                header: vec!["k", "value", "witness", "exactness", "stable", "upper_bound", "periodic_signature"],
                rows: r
                    .rows
                    .iter()
                    .map(|row| {
                        vec![
                            row.k.to_string(),
                            row.value.to_string(),
                            row.witness.to_string(),
                            row.exactness.to_string(),
                            row.stable.to_string(),
                            opt(&row.upper_bound),
                            row.periodic_signature.to_string(),
                        ]
                    })
                    .collect(),
            },
            Report::Decompose(r) => {
                let component_of = |i: usize| r.graph.components.iter().position(|c| c.contains(&i)).unwrap_or(0);
                Table {
                    header: vec!["residue", "alphabet", "component"],
                    rows: r
                        .residue_alphabets
                        .iter()
                        .enumerate()
                        .map(|(i, a)| vec![i.to_string(), letters(a), component_of(i).to_string()])
                        .collect(),
                }
            }
            Report::Classify(c) => Table {
                header: vec!["residue", "alphabet", "verdict", "preperiod", "period", "constant", "complexity"],
                rows: c
                    .report
                    .residues
                    .iter()
                    .map(|r| {
                        vec![
                            r.index.to_string(),
                            letters(&r.alphabet),
                            r.verdict.to_string(),
                            opt(&r.period.map(|p| p.preperiod)),
                            opt(&r.period.map(|p| p.period)),
                            opt(&r.constant_symbol),
                            r.complexity.iter().map(usize::to_string).collect::<Vec<_>>().join(" "),
                        ]
                    })
                    .collect(),
            },
            Report::SharedWindow(r) => Table {
                header: vec!["k", "window", "count_a", "count_b"],
                rows: r
                    .rows
                    .iter()
                    .map(|row| vec![row.k.to_string(), opt(&row.window), opt(&row.count_a), opt(&row.count_b)])
                    .collect(),
            },
            Report::Recurrence(r) => Table {
                header: vec!["length", "max_gap"],
                rows: r
                    .rows
                    .iter()
                    .map(|row| vec![row.length.to_string(), row.max_gap.map_or_else(|| "inf".into(), |g| g.to_string())])
                    .collect(),
            },
            Report::Verify(s) => Table {
                header: vec!["check", "result", "detail"],
                rows: s
                    .checks
                    .iter()
                    .map(|c| vec![c.name.clone(), if c.passed { "pass" } else { "FAIL" }.to_string(), c.detail.clone()])
                    .collect(),
            },
        }
    }

    fn preamble(&self) -> Vec<String> {
        match self {
            Report::Complexity(r) => {
                let mut v = vec![
                    format!("source: {}", r.source),
                    format!("strategy: {}, horizon {}, scan {}", r.strategy, r.horizon, r.scan_length),
                ];
                if let Some(c) = r.classification {
                    v.push(format!("structure: {c} (m = {})", opt(&r.m)));
                }
                v
            }
            Report::Decompose(r) => {
                let singular: Vec<String> =
                    r.letters.iter().filter_map(|(b, q)| q.map(|q| format!("{b}:{q}"))).collect();
                let mut v = vec![
                    format!("source: {}", r.source),
                    format!("scan {}, max period {}", r.scan_length, r.max_period),
                    format!("singular letters: {}", if singular.is_empty() { "none".into() } else { singular.join(", ") }),
                    format!("decomposition cycle m = {}", r.m),
                    format!("mask: {} (period {})", r.mask.pattern, r.mask.period),
                    format!("graph edges: {:?}", r.graph.edges),
                    format!("components: {:?}", r.graph.components),
                ];
                v.push(match &r.projection {
                    Some(p) => format!(
                        "periodic by projection: {{{}}} preperiod {} period {}",
                        letters(&p.subset),
                        p.preperiod,
                        p.period
                    ),
                    None => "periodic by projection: none".into(),
                });
                v
            }
            Report::Classify(c) => {
                let r = &c.report;
                let bounds: Vec<String> =
                    c.structural_bounds.iter().map(|b| format!("k={}: {}", b.k, opt(&b.upper_bound))).collect();
                vec![
                    format!("source: {}", c.source),
                    format!("classification: {}", r.classification),
                    format!("m = {}, alphabet {{{}}}", r.m, letters(&r.alphabet)),
                    format!("components: {:?}", r.components),
                    format!("structural upper bounds: {}", bounds.join(", ")),
                    format!("scan {}, max period {}, horizon {}, k_check {}", r.scan_length, r.max_period, r.horizon, r.k_check),
                ]
            }
            Report::SharedWindow(r) => vec![
                format!("sources: {} / {}", r.source_a, r.source_b),
                format!("horizon {}, scan {}", r.horizon, r.scan_length),
            ],
            Report::Recurrence(r) => vec![format!("source: {}", r.source), format!("scan {}", r.scan_length)],
            Report::Verify(s) => vec![format!("suite: {} ({} passed, {} failed)", s.suite, s.passed, s.failed)],
        }
    }

    fn notes(&self) -> Vec<String> {
        match self {
            Report::Complexity(r) => r.warnings.iter().map(|w| format!("warning: {w}")).collect(),
            Report::Decompose(r) => r.notes.iter().map(|n| format!("note: {n}")).collect(),
            Report::Classify(c) => c.report.notes.iter().map(|n| format!("note: {n}")).collect(),
            _ => Vec::new(),
        }
    }
}

impl Document {
    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Json => serde_json::to_string_pretty(self)
                .map(|s| s + "\n")
                .map_err(|e| Error::Io(format!("cannot serialize report: {e}"))),
            OutputFormat::Csv => self.report.table().csv(),
            OutputFormat::Text => {
                let mut out = String::new();
                for line in self.report.preamble() {
                    out.push_str(&line);
                    out.push('\n');
                }
                out.push('\n');
                out.push_str(&self.report.table().text());
                for note in self.report.notes() {
                    out.push_str(&note);
                    out.push('\n');
                }
                if let Some(c) = &self.expectations {
                    out.push_str("\nexpectations:\n");
                    out.push_str(&c.render_diff());
                }
                Ok(out)
            }
        }
    }
}
