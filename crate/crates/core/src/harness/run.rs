use super::expect::Comparison;
use super::experiment::{ExperimentSpec, Task};
use super::report::{
    BoundRow, ClassifyReport, ComplexityReport, ComplexityRow, DecomposeReport, Document, RecurrenceReport,
    RecurrenceRow, Report, SharedRow, SharedWindowReport,
};
use super::verify::{verify_suite_with, VerifyOptions};
use crate::complexity::{shared_window_search, structural_upper_bound, WindowSearch};
use crate::decompose::{
    classify_structure_with, decomposition_cycle, periodic_by_projection_with, residue_alphabets, singular_letters,
    singular_mask, uniform_recurrence_profile, MaskSummary, ResidueGraph,
};
use crate::seqcore::SequenceSource;
use crate::{Error, Result};

/// Exit status: 0 success, 1 expectation mismatch or failed check.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Document,
    pub document: String,
    pub status: i32,
    pub diff: Option<String>,
}

pub fn run(spec: &ExperimentSpec) -> Result<Outcome> {
    spec.validate()?;
    let mut failed = false;
    let mut comparison = None;
    let report = match spec.task {
        Task::Complexity => {
            let (report, cmp) = complexity(spec, &primary(spec)?)?;
            comparison = cmp;
            report
        }
        Task::Decompose => {
            let r = decompose(spec, &primary(spec)?)?;
            comparison = spec.expect.as_ref().map(|e| {
                let mut c = Comparison::default();
                if let Some(m) = e.m {
                    c.push("m", m, Some(match &r {
                        Report::Decompose(d) => d.m,
                        _ => unreachable!(),
                    }));
                }
                c
            });
            r
        }
        Task::Classify => {
            let source = primary(spec)?;
            let report = classify_structure_with(&source, &spec.search, &spec.classify)?;
            comparison = spec.expect.as_ref().map(|e| {
                let mut c = Comparison::default();
                if let Some(cl) = e.classification {
                    c.push("classification", cl, Some(report.classification));
                }
                if let Some(m) = e.m {
                    c.push("m", m, Some(report.m));
                }
                c
            });
            let structural_bounds =
                spec.k.iter().map(|k| BoundRow { k, upper_bound: structural_upper_bound(&report, k) }).collect();
            Report::Classify(ClassifyReport { source: label(spec), report, structural_bounds })
        }
        Task::SharedWindow => shared(spec)?,
        Task::Recurrence => {
            let source = primary(spec)?;
            let profile = uniform_recurrence_profile(&source, spec.l_max, spec.search.scan_length)?;
            let rows =
                profile.into_iter().enumerate().map(|(i, max_gap)| RecurrenceRow { length: i + 1, max_gap }).collect();
            Report::Recurrence(RecurrenceReport { source: label(spec), scan_length: spec.search.scan_length, rows })
        }
        Task::Verify => {
            let suite = spec.suite.expect("validated");
            let opts = VerifyOptions { search: spec.search.clone(), classify: spec.classify, ..VerifyOptions::default() };
            let summary = verify_suite_with(suite, &opts)?;
            failed |= !summary.all_passed();
            Report::Verify(summary)
        }
    };
    let diff = comparison.as_ref().filter(|c| !c.passed()).map(|c| c.render_diff());
    failed |= diff.is_some();
    let report = Document { report, expectations: comparison };
    Ok(Outcome { document: report.render(spec.format)?, status: i32::from(failed), diff, report })
}

fn primary(spec: &ExperimentSpec) -> Result<SequenceSource> {
    spec.source.as_ref().ok_or_else(|| Error::InvalidArgument("no source given".into()))?.build()
}

fn label(spec: &ExperimentSpec) -> String {
    spec.source.as_ref().map_or_else(String::new, |s| s.label().to_string())
}

fn complexity(spec: &ExperimentSpec, source: &SequenceSource) -> Result<(Report, Option<Comparison>)> {
    let search = WindowSearch::new(source, &spec.search)?;
    let mut warnings = Vec::new();
    let structure = match classify_structure_with(source, &spec.search, &spec.classify) {
        Ok(r) => Some(r),
        Err(e) => {
            warnings.push(format!("structure not classified: {e}"));
            None
        }
    };
    let mut rows = Vec::new();
    let mut comparison = spec.expect.as_ref().map(|_| Comparison::default());
    for k in spec.k.iter() {
        let mut cert = search.certify(k)?;
        let bound = structure.as_ref().and_then(|r| structural_upper_bound(r, k));
        if let Some(b) = bound {
            if !cert.apply_upper_bound(b) {
                warnings.push(format!("k={k}: value {} exceeds the structural bound {b}", cert.value));
            }
        }
        if let (Some(expect), Some(cmp)) = (&spec.expect, comparison.as_mut()) {
            if let Some(&want) = expect.values.get(&k) {
                cert.apply_expected(want);
                cmp.push(format!("k={k}"), want, Some(cert.value));
            }
        }
        if spec.with_words {
            cert.attach_words(source)?;
        }
        warnings.extend(cert.warnings().into_iter().map(|w| format!("k={k}: {w}")));
        rows.push(ComplexityRow::new(&cert, bound));
    }
    if let (Some(expect), Some(cmp)) = (&spec.expect, comparison.as_mut()) {
        for (&k, &want) in expect.values.range(..spec.k.min).chain(expect.values.range(spec.k.max + 1..)) {
            cmp.push(format!("k={k}"), want, None::<usize>);
        }
        if let Some(cl) = expect.classification {
            cmp.push("classification", cl, structure.as_ref().map(|r| r.classification));
        }
        if let Some(m) = expect.m {
            cmp.push("m", m, structure.as_ref().map(|r| r.m));
        }
    }
    let report = ComplexityReport {
        source: label(spec),
        strategy: spec.search.strategy,
        horizon: spec.search.horizon,
        scan_length: spec.search.scan_length,
        classification: structure.as_ref().map(|r| r.classification),
        m: structure.as_ref().map(|r| r.m),
        rows,
        warnings,
    };
    Ok((Report::Complexity(report), comparison))
}

fn decompose(spec: &ExperimentSpec, source: &SequenceSource) -> Result<Report> {
    let scan = spec.search.scan_length;
    let max_period = spec.classify.max_period.min(scan / 2).max(1);
    let singular = singular_letters(source, scan, max_period)?;
    let m = decomposition_cycle(&singular);
    let mask = singular_mask(source, &singular, m)?;
    let residue_alphabets = residue_alphabets(source, m, scan)?;
    let graph = ResidueGraph::from_alphabets(&residue_alphabets);
    let projection = periodic_by_projection_with(source, scan, max_period, spec.search.parallelism)?;
    let mut notes = Vec::new();
    if singular.singular().is_empty() {
        notes.push("no singular letters; the decomposition is trivial".to_string());
    }
    Ok(Report::Decompose(DecomposeReport {
        source: label(spec),
        scan_length: scan,
        max_period,
        letters: singular.letters,
        m,
        mask: MaskSummary { period: mask.period, pattern: mask.pattern() },
        residue_alphabets,
        graph,
        projection,
        notes,
    }))
}

fn shared(spec: &ExperimentSpec) -> Result<Report> {
    let a = primary(spec)?;
    let partner = spec.partner.as_ref().ok_or_else(|| Error::InvalidArgument("no second source".into()))?;
    let b = partner.build()?;
    let sa = WindowSearch::new(&a, &spec.search)?;
    let sb = WindowSearch::new(&b, &spec.search)?;
    let mut rows = Vec::new();
    for k in spec.k.iter() {
        let window = shared_window_search(&a, &b, k, &spec.search)?;
        let count = |s: &WindowSearch| window.as_ref().and_then(|w| s.evaluate(w)).map(|e| e.count);
        rows.push(SharedRow { k, count_a: count(&sa), count_b: count(&sb), window });
    }
    Ok(Report::SharedWindow(SharedWindowReport {
        source_a: label(spec),
        source_b: partner.label().to_string(),
        horizon: spec.search.horizon,
        scan_length: spec.search.scan_length,
        rows,
    }))
}
