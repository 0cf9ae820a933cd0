use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::singular::lcm;
use super::{decomposition_cycle, singular_letters, singular_mask, ResidueGraph};
use crate::complexity::{SearchConfig, WindowSearch};
use crate::par;
use crate::seqcore::{eventual_period, observed_symbols, rarely_seen_symbols, Periodicity, SequenceSource, Symbol};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Eventually constant.
    Constant,
    /// Eventually periodic with period at least 2.
    Periodic,
    /// No period found and measured complexity at least `2k` for every checked `k`.
    Aperiodic,
    /// No period found, yet complexity too low to certify aperiodicity.
    Indeterminate,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Constant => "constant",
            Verdict::Periodic => "periodic",
            Verdict::Aperiodic => "aperiodic",
            Verdict::Indeterminate => "indeterminate",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    StrongPatternSturmianStructure,
    PatternSturmianPlusConstants,
    LowComplexityStructure,
    Periodic,
    Unclassified,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::StrongPatternSturmianStructure => "strong-pattern-sturmian-structure",
            Classification::PatternSturmianPlusConstants => "pattern-sturmian-plus-constants",
            Classification::LowComplexityStructure => "low-complexity-structure",
            Classification::Periodic => "periodic",
            Classification::Unclassified => "unclassified",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueSummary {
    pub index: usize,
    pub alphabet: Vec<Symbol>,
    /// Letters seen in the second half of the scan.
    pub tail_alphabet: Vec<Symbol>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub period: Option<Periodicity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constant_symbol: Option<Symbol>,
    /// Measured `p*(k)` lower bounds for `k = 1..`, when computed.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub complexity: Vec<usize>,
}

impl ResidueSummary {
    pub fn is_pattern_sturmian(&self) -> bool {
        self.verdict == Verdict::Aperiodic
            && self.alphabet.len() == 2
            && !self.complexity.is_empty()
            && self.complexity.iter().enumerate().all(|(i, &v)| v == 2 * (i + 1))
    }

    /// Constant from the very first term.
    pub fn is_purely_constant(&self) -> bool {
        self.verdict == Verdict::Constant && self.period.is_some_and(|p| p.preperiod == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaskSummary {
    pub period: usize,
    pub pattern: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub m: usize,
    pub alphabet: Vec<Symbol>,
    pub singular_letters: BTreeMap<Symbol, usize>,
    pub residues: Vec<ResidueSummary>,
    pub graph_edges: Vec<(usize, usize)>,
    pub components: Vec<Vec<usize>>,
    pub classification: Classification,
    pub mask: MaskSummary,
    /// Eventual period of the whole sequence when every residue has one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sequence_period: Option<Periodicity>,
    /// Surplus of the constant residues over `2k` for large `k`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constant_surplus: Option<usize>,
    pub scan_length: usize,
    pub max_period: usize,
    pub horizon: usize,
    pub k_check: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl DecompositionReport {
    pub fn graph(&self) -> ResidueGraph {
        ResidueGraph { vertices: self.m, edges: self.graph_edges.clone(), components: self.components.clone() }
    }

    /// The single aperiodic residue, when there is exactly one.
    pub fn aperiodic_residue(&self) -> Option<&ResidueSummary> {
        let mut it = self.residues.iter().filter(|r| r.verdict == Verdict::Aperiodic);
        match (it.next(), it.next()) {
            (Some(r), None) => Some(r),
            _ => None,
        }
    }

    /// Constants of the residues, with `None` at the aperiodic one.
    pub fn residue_constants(&self) -> Vec<Option<Symbol>> {
        self.residues.iter().map(|r| r.constant_symbol.filter(|_| r.is_purely_constant())).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassifyOptions {
    pub max_period: usize,
    pub k_check: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { max_period: 256, k_check: 5 }
    }
}

/// Largest number of distinct constant words the residues other than `p`
/// can add to a window whose offsets mod `m` form `I ∋ 0`, `|I| ≤ max_size`.
///
/// Start positions `n ≡ i` whose window never meets residue `p` read the
/// fixed word `(c[(i + r) mod m])_{r ∈ I}`; every other class reads `p`.
pub fn constant_surplus(constants: &[Option<Symbol>], p: usize, max_size: usize) -> usize {
    let m = constants.len();
    let max_size = max_size.min(m).max(1);
    let mut best = 0;
    let mut offsets = vec![0usize];
    fn walk(
        constants: &[Option<Symbol>],
        p: usize,
        max_size: usize,
        offsets: &mut Vec<usize>,
        next: usize,
        best: &mut usize,
    ) {
        let m = constants.len();
        let mut words: Vec<Vec<Option<Symbol>>> = (0..m)
            .filter(|&i| !offsets.contains(&((p + m - i) % m)))
            .map(|i| offsets.iter().map(|&r| constants[(i + r) % m]).collect())
            .collect();
        words.sort();
        words.dedup();
        *best = (*best).max(words.len());
        if offsets.len() == max_size {
            return;
        }
        for r in next..m {
            offsets.push(r);
            walk(constants, p, max_size, offsets, r + 1, best);
            offsets.pop();
        }
    }
    walk(constants, p, max_size, &mut offsets, 1, &mut best);
    best
}

pub fn classify_structure(source: &SequenceSource, config: &SearchConfig) -> Result<DecompositionReport> {
    classify_structure_with(source, config, &ClassifyOptions::default())
}

pub fn classify_structure_with(
    source: &SequenceSource,
    config: &SearchConfig,
    options: &ClassifyOptions,
) -> Result<DecompositionReport> {
    config.validate()?;
    let scan = config.scan_length;
    let max_period = options.max_period.min(scan / 2).max(1);
    let prefix = source.prefix(scan)?;
    let alphabet = observed_symbols(&prefix);

    let singular = singular_letters(source, scan, max_period)?;
    let m = decomposition_cycle(&singular);
    let mask = singular_mask(source, &singular, m)?;

    let indices: Vec<usize> = (0..m).collect();
    let residues = par::map(&indices, config.parallelism, |&i| summarize_residue(source, m, i, config, options, max_period))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let graph = ResidueGraph::from_alphabets(&residues.iter().map(|r| r.alphabet.clone()).collect::<Vec<_>>());

    let mut notes = Vec::new();
    let rare = rarely_seen_symbols(&prefix);
    if !rare.is_empty() {
        notes.push(format!(
            "symbols {rare:?} do not occur in the second half of the scan; the decomposition uses the \
             input's own singular letters rather than an auxiliary recurrent word"
        ));
    }

    let mut report = DecompositionReport {
        m,
        alphabet,
        singular_letters: singular.singular(),
        residues,
        graph_edges: graph.edges,
        components: graph.components,
        classification: Classification::Unclassified,
        mask: MaskSummary { period: mask.period, pattern: mask.pattern() },
        sequence_period: None,
        constant_surplus: None,
        scan_length: scan,
        max_period,
        horizon: config.horizon,
        k_check: options.k_check,
        notes,
    };
    report.sequence_period = sequence_period(&report, &prefix);
    classify(&mut report);
    Ok(report)
}

fn summarize_residue(
    source: &SequenceSource,
    m: usize,
    index: usize,
    config: &SearchConfig,
    options: &ClassifyOptions,
    max_period: usize,
) -> Result<ResidueSummary> {
    let residue = source.residue(m, index)?;
    let prefix = residue.prefix(config.scan_length)?;
    let alphabet = observed_symbols(&prefix);
    let tail_alphabet = observed_symbols(&prefix[prefix.len() / 2..]);
    let period = eventual_period(&prefix, max_period);
    let mut summary = ResidueSummary {
        index,
        alphabet,
        tail_alphabet,
        verdict: Verdict::Indeterminate,
        period,
        constant_symbol: None,
        complexity: Vec::new(),
    };
    match period {
        Some(p) if p.period == 1 => {
            summary.verdict = Verdict::Constant;
            summary.constant_symbol = prefix.last().copied();
        }
        Some(_) => summary.verdict = Verdict::Periodic,
        None => {
            let k_max = options.k_check.min(config.horizon + 1);
            let search = WindowSearch::new(&residue, config)?;
            summary.complexity = (1..=k_max).map(|k| search.certify(k).map(|c| c.value)).collect::<Result<_>>()?;
            if summary.complexity.iter().enumerate().all(|(i, &v)| v >= 2 * (i + 1)) {
                summary.verdict = Verdict::Aperiodic;
            }
        }
    }
    Ok(summary)
}

fn sequence_period(report: &DecompositionReport, prefix: &[Symbol]) -> Option<Periodicity> {
    let mut period = 1;
    let mut preperiod = 0;
    for r in &report.residues {
        let p = r.period?;
        period = lcm(period, p.period);
        preperiod = preperiod.max(p.preperiod);
    }
    let combined = Periodicity { preperiod: report.m * preperiod, period: report.m * period };
    if 2 * combined.period <= prefix.len() {
        if let Some(found) = eventual_period(prefix, combined.period) {
            return Some(found);
        }
    }
    Some(combined)
}

fn classify(report: &mut DecompositionReport) {
    let ell = report.alphabet.len();
    if let Some(ap) = report.aperiodic_residue() {
        let p = ap.index;
        let others_constant = report.residues.iter().filter(|r| r.index != p).all(ResidueSummary::is_purely_constant);
        if ap.is_pattern_sturmian() && others_constant {
            let surplus = constant_surplus(&report.residue_constants(), p, report.m);
            report.constant_surplus = Some(surplus);
            report.classification = if surplus + 2 == ell {
                Classification::StrongPatternSturmianStructure
            } else {
                Classification::PatternSturmianPlusConstants
            };
            return;
        }
        let pair = &ap.tail_alphabet;
        let thm_form = pair.len() == 2
            && report.residues.iter().filter(|r| r.index != p).all(|r| match r.verdict {
                Verdict::Constant => true,
                Verdict::Periodic => r.tail_alphabet.iter().all(|s| pair.contains(s)),
                _ => false,
            });
        if thm_form {
            report.classification = Classification::LowComplexityStructure;
            return;
        }
    }
    report.classification = if report.residues.iter().all(|r| r.period.is_some()) {
        Classification::Periodic
    } else {
        Classification::Unclassified
    };
}
