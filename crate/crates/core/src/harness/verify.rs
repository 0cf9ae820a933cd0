//! Property batteries over the fixed roster.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::expect::Expectations;
use super::roster::{aperiodic_roster, periodic_roster, RosterEntry};
use crate::complexity::{structural_upper_bound, ComplexityCertificate, Exactness, SearchConfig, WindowSearch};
use crate::decompose::{
    class_word_sets, classify_structure_with, decomposition_cycle, periodic_by_projection, residue_graph,
    singular_letters, singular_mask, uniform_recurrence_profile, ClassifyOptions,
};
use crate::complexity::lifted_window;
use crate::generators::{example_6_1, example_6_2, example_6_3, fibonacci, periodic_source};
use crate::seqcore::{detect_least_period, observed_symbols, tau_words, Periodicity, SequenceSource, Symbol, Window};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteName {
    Facts,
    LowerBounds,
    Growth,
    Structure,
    Examples,
}

impl SuiteName {
    pub const ALL: [SuiteName; 5] =
        [SuiteName::Facts, SuiteName::LowerBounds, SuiteName::Growth, SuiteName::Structure, SuiteName::Examples];
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteName::ALL.into_iter().find(|n| n.to_string() == s).ok_or_else(|| {
            Error::Parse(format!("suite {s:?}: expected facts, lower-bounds, growth, structure or examples"))
        })
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SuiteName::Facts => "facts",
            SuiteName::LowerBounds => "lower-bounds",
            SuiteName::Growth => "growth",
            SuiteName::Structure => "structure",
            SuiteName::Examples => "examples",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub suite: SuiteName,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<Check>,
}

impl SuiteSummary {
    fn new(suite: SuiteName, checks: Vec<Check>) -> Self {
        let passed = checks.iter().filter(|c| c.passed).count();
        SuiteSummary { suite, passed, failed: checks.len() - passed, checks }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    pub search: SearchConfig,
    pub classify: ClassifyOptions,
    pub k_max: usize,
    pub random_windows: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            search: SearchConfig::default(),
            classify: ClassifyOptions::default(),
            k_max: 6,
            random_windows: 20,
            seed: 0x5eed,
        }
    }
}

impl VerifyOptions {
    fn max_period(&self) -> usize {
        self.classify.max_period.min(self.search.scan_length / 2).max(1)
    }
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), passed, detail: detail.into() }
}

fn list(values: &[usize]) -> String {
    values.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

/// Certificates for `k = 1..=k_max` plus the aperiodicity verdict.
struct Measured {
    name: String,
    certs: Vec<ComplexityCertificate>,
    period: Option<Periodicity>,
    ell: usize,
    aperiodic: bool,
}

impl Measured {
    fn new(entry: &RosterEntry, opts: &VerifyOptions) -> Result<Self> {
        let search = WindowSearch::new(&entry.source, &opts.search)?;
        let certs = (1..=opts.k_max).map(|k| search.certify(k)).collect::<Result<Vec<_>>>()?;
        let period = detect_least_period(&entry.source, opts.search.scan_length, opts.max_period())?;
        let ell = observed_symbols(&entry.source.prefix(opts.search.scan_length)?).len();
        let aperiodic = period.is_none()
            && certs.iter().take(opts.classify.k_check).all(|c| c.value >= 2 * c.k);
        Ok(Measured { name: entry.name.clone(), certs, period, ell, aperiodic })
    }

    fn values(&self) -> Vec<usize> {
        self.certs.iter().map(|c| c.value).collect()
    }
}

fn measure_all(entries: &[RosterEntry], opts: &VerifyOptions) -> Result<Vec<Measured>> {
    entries.iter().map(|e| Measured::new(e, opts)).collect()
}

pub fn verify_suite(name: SuiteName) -> Result<SuiteSummary> {
    verify_suite_with(name, &VerifyOptions::default())
}

pub fn verify_suite_with(name: SuiteName, opts: &VerifyOptions) -> Result<SuiteSummary> {
    opts.search.validate_for(opts.k_max)?;
    let checks = match name {
        SuiteName::Facts => facts(opts)?,
        SuiteName::LowerBounds => lower_bounds(opts)?,
        SuiteName::Growth => growth(opts)?,
        SuiteName::Structure => structure(opts)?,
        SuiteName::Examples => examples(opts)?,
    };
    Ok(SuiteSummary::new(name, checks))
}

fn random_window(rng: &mut ChaCha8Rng, horizon: usize, k: usize) -> Window {
    let mut idx: Vec<usize> = rand::seq::index::sample(rng, horizon, k - 1).into_iter().map(|i| i + 1).collect();
    idx.sort_unstable();
    idx.insert(0, 0);
    Window::new(idx).expect("sampled indices are distinct and positive")
}

fn facts(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let aperiodic = aperiodic_roster()?;
    for entry in aperiodic.iter().take(6) {
        let search = WindowSearch::new(&entry.source, &opts.search)?;
        for k in 1..=5.min(opts.k_max) {
            let counts: Vec<usize> = (0..opts.random_windows)
                .map(|_| {
                    let w = random_window(&mut rng, opts.search.horizon, k);
                    search.evaluate(&w).expect("window within horizon").count
                })
                .collect();
            let min = counts.iter().copied().min().unwrap_or(0);
            checks.push(check(
                format!("every window has at least k+1 words: {} k={k}", entry.name),
                min > k,
                format!("min {min} over {} random windows", counts.len()),
            ));
        }
    }
    for m in measure_all(&periodic_roster()?, opts)? {
        let low = m.certs.iter().find(|c| c.value < 2 * c.k).map(|c| c.k);
        checks.push(check(
            format!("eventually periodic has some value <= 2k-1: {}", m.name),
            low.is_some() && m.period.is_some(),
            format!("values {} first low k {:?} period {:?}", list(&m.values()), low, m.period),
        ));
    }
    for m in measure_all(&aperiodic, opts)? {
        let low = m.certs.iter().find(|c| c.value < 2 * c.k).map(|c| c.k);
        checks.push(check(
            format!("aperiodic never drops to 2k-1: {}", m.name),
            m.aperiodic && low.is_none(),
            format!("values {} period {:?}", list(&m.values()), m.period),
        ));
    }
    Ok(checks)
}

fn lower_bounds(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for m in measure_all(&aperiodic_roster()?, opts)? {
        checks.push(check(format!("certified aperiodic: {}", m.name), m.aperiodic, format!("values {}", list(&m.values()))));
        if !m.aperiodic {
            continue;
        }
        let short: Vec<usize> =
            m.certs.iter().take(5).filter(|c| c.value + 2 < 2 * c.k + m.ell).map(|c| c.k).collect();
        checks.push(check(
            format!("value >= 2k+l-2: {} (l={})", m.name, m.ell),
            short.is_empty(),
            format!("values {} failing k {:?}", list(&m.values()), short),
        ));
    }
    let interleaved = [
        ("example-6.1(ell=3)", example_6_1(3)?),
        ("example-6.1(ell=4)", example_6_1(4)?),
        ("example-6.1(ell=5)", example_6_1(5)?),
        ("example-6.2", example_6_2()),
        ("example-6.3", example_6_3()),
    ];
    for (name, source) in interleaved {
        let report = singular_letters(&source, opts.search.scan_length, opts.max_period())?;
        let m = decomposition_cycle(&report);
        let ell = observed_symbols(&source.prefix(opts.search.scan_length)?).len();
        let residue = source.residue(m, 0)?;
        let mut residue_config = opts.search.clone();
        residue_config.horizon = opts.search.horizon / m;
        let whole = WindowSearch::new(&source, &opts.search)?;
        let part = WindowSearch::new(&residue, &residue_config)?;
        let k_top = 5.min(residue_config.horizon + 1);
        let mut rows = Vec::new();
        let mut ok = true;
        for k in 1..=k_top {
            let (a, r) = (whole.certify(k)?.value, part.certify(k)?.value);
            ok &= a + 2 >= r + ell;
            rows.push(format!("k={k}: {a} vs {r}+{}", ell - 2));
        }
        checks.push(check(format!("whole beats aperiodic residue by l-2: {name}"), ok, rows.join("; ")));
    }
    Ok(checks)
}

fn growth(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for m in measure_all(&aperiodic_roster()?, opts)? {
        if !m.aperiodic {
            checks.push(check(format!("growth: {}", m.name), false, "source did not certify as aperiodic"));
            continue;
        }
        let mut bad = Vec::new();
        let mut vacuous = Vec::new();
        for pair in m.certs.windows(2) {
            if pair[0].witness.max_index() >= opts.search.horizon {
                vacuous.push(pair[0].k);
            } else if pair[1].value < pair[0].value + 2 {
                bad.push(pair[0].k);
            }
        }
        checks.push(check(
            format!("value(k+1) >= value(k)+2: {}", m.name),
            bad.is_empty(),
            format!("values {} failing k {:?} witness at horizon for k {:?}", list(&m.values()), bad, vacuous),
        ));
    }
    Ok(checks)
}

/// Reference search for [`periodic_by_projection`]: subsets by size then
/// lexicographically, accepting period `q` when the back half of the
/// indicator is `q`-periodic.
fn projection_oracle(prefix: &[Symbol], max_period: usize) -> Option<(Vec<Symbol>, usize)> {
    let letters = observed_symbols(prefix);
    let half = prefix.len() / 2;
    fn subsets(letters: &[Symbol], size: usize) -> Vec<Vec<Symbol>> {
        if size == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for (i, &b) in letters.iter().enumerate() {
            for mut rest in subsets(&letters[i + 1..], size - 1) {
                rest.insert(0, b);
                out.push(rest);
            }
        }
        out
    }
    for size in 1..letters.len() {
        for subset in subsets(&letters, size) {
            let ind: Vec<bool> = prefix.iter().map(|s| subset.contains(s)).collect();
            for q in 1..=max_period {
                if prefix.len() - half >= 2 * q && (half..prefix.len() - q).all(|n| ind[n] == ind[n + q]) {
                    return Some((subset, q));
                }
            }
        }
    }
    None
}

fn structure(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let scan = opts.search.scan_length;
    let max_period = opts.max_period();
    for ell in 3..=5 {
        let m = decomposition_cycle(&singular_letters(&example_6_1(ell)?, scan, max_period)?);
        checks.push(check(format!("decomposition cycle of example-6.1(ell={ell}) is ell-1"), m == ell - 1, format!("m = {m}")));
    }
    let g = residue_graph(&example_6_3(), 3, scan)?;
    checks.push(check(
        "example-6.3 residue graph components",
        g.components == vec![vec![0, 1], vec![2]],
        format!("{:?}", g.components),
    ));

    use crate::decompose::Classification as C;
    let table = [
        ("example-6.1(ell=3)", example_6_1(3)?, C::StrongPatternSturmianStructure, 2),
        ("example-6.1(ell=4)", example_6_1(4)?, C::StrongPatternSturmianStructure, 3),
        ("example-6.1(ell=5)", example_6_1(5)?, C::StrongPatternSturmianStructure, 4),
        ("example-6.2", example_6_2(), C::PatternSturmianPlusConstants, 5),
        ("example-6.3", example_6_3(), C::Unclassified, 3),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for (name, source, expected, m_expected) in &table {
        let r = classify_structure_with(source, &opts.search, &opts.classify)?;
        checks.push(check(
            format!("classification of {name}"),
            r.classification == *expected && r.m == *m_expected,
            format!("{} with m = {}", r.classification, r.m),
        ));

        let m = r.m;
        let mut union_ok = true;
        for _ in 0..5 {
            let w = random_window(&mut rng, 30.min(opts.search.horizon), 3);
            let union: HashSet<_> = class_word_sets(source, &w, m, 4000)?.into_iter().flatten().collect();
            union_ok &= &union == tau_words(source, &w, 4000)?.words();
        }
        checks.push(check(format!("class word sets union to F: {name}"), union_ok, format!("m = {m}, 5 windows")));

        let report = singular_letters(source, scan, max_period)?;
        let mask = singular_mask(source, &report, 2 * m)?;
        if mask.period == m {
            let tau = Window::new(vec![0, 1])?;
            let lifted = lifted_window(&tau, m, tau.size() + m - 1, m * tau.max_index())?;
            let classes = class_word_sets(source, &lifted, m, 4000)?;
            let total: usize = classes.iter().map(HashSet::len).sum();
            let distinct: HashSet<_> = classes.iter().flatten().collect();
            checks.push(check(
                format!("lifted window separates start classes: {name}"),
                total == distinct.len(),
                format!("window {lifted}, {total} class words, {} distinct", distinct.len()),
            ));
        }

        let search = WindowSearch::new(source, &opts.search)?;
        let ell = r.alphabet.len();
        let below = (1..=5).map(|k| search.certify(k).map(|c| (k, c.value))).collect::<Result<Vec<_>>>()?;
        if let Some((k, v)) = below.iter().copied().find(|&(k, v)| v < ell * k) {
            checks.push(check(
                format!("residue graph disconnected below l*k: {name}"),
                components_of(&r) > 1,
                format!("value {v} < {ell}*{k}, components {}", components_of(&r)),
            ));
        }
    }

    let mut oracle_sources: Vec<RosterEntry> =
        aperiodic_roster()?.into_iter().filter(|e| e.name != "silver-rotation").collect();
    oracle_sources.extend(periodic_roster()?.into_iter().filter(|e| e.name != "constant-3"));
    for entry in oracle_sources {
        let prefix = entry.source.prefix(10_000)?;
        if observed_symbols(&prefix).len() > 4 {
            continue;
        }
        let got = periodic_by_projection(&entry.source, 10_000, 64)?.map(|h| (h.subset, h.period));
        let want = projection_oracle(&prefix, 64);
        checks.push(check(
            format!("periodic by projection matches oracle: {}", entry.name),
            got == want,
            format!("library {got:?}, oracle {want:?}"),
        ));
    }

    for (name, source) in [("fibonacci", fibonacci()), ("example-6.3", example_6_3())] {
        let profile = uniform_recurrence_profile(&source, 8, 100_000)?;
        checks.push(check(
            format!("bounded return gaps: {name}"),
            profile.iter().all(Option::is_some),
            format!("{profile:?}"),
        ));
    }
    Ok(checks)
}

fn components_of(r: &crate::decompose::DecompositionReport) -> usize {
    r.components.len()
}

const GOLDEN: [(&str, &str); 6] = [
    ("example-6.1(ell=3)", include_str!("../../tests/data/example-6.1-ell3.toml")),
    ("example-6.1(ell=4)", include_str!("../../tests/data/example-6.1-ell4.toml")),
    ("example-6.1(ell=5)", include_str!("../../tests/data/example-6.1-ell5.toml")),
    ("example-6.2", include_str!("../../tests/data/example-6.2.toml")),
    ("example-6.3", include_str!("../../tests/data/example-6.3.toml")),
    ("fibonacci", include_str!("../../tests/data/fibonacci.toml")),
];

fn golden_source(name: &str) -> Result<SequenceSource> {
    Ok(match name {
        "example-6.1(ell=3)" => example_6_1(3)?,
        "example-6.1(ell=4)" => example_6_1(4)?,
        "example-6.1(ell=5)" => example_6_1(5)?,
        "example-6.2" => example_6_2(),
        "example-6.3" => example_6_3(),
        _ => fibonacci(),
    })
}

/// Grows a window for `source` one index at a time, each step reaching
/// `2j` words, so every restriction is itself maximal for a two-letter
/// pattern Sturmian word.
pub fn nested_maximal_window(source: &SequenceSource, k: usize, config: &SearchConfig) -> Result<Option<Window>> {
    let search = WindowSearch::new(source, config)?;
    let mut scratch = search.table().scratch();
    let mut idx = vec![0];
    while idx.len() < k {
        let target = 2 * (idx.len() + 1);
        let last = *idx.last().expect("non-empty");
        let next = (last + 1..=config.horizon).find(|&h| {
            let mut w = idx.clone();
            w.push(h);
            search.table().evaluate(&w, &mut scratch).count == target
        });
        match next {
            Some(h) => idx.push(h),
            None => return Ok(None),
        }
    }
    Ok(Some(Window::new(idx)?))
}

fn examples(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (name, text) in GOLDEN {
        let expected = Expectations::from_toml(text)?;
        let source = golden_source(name)?;
        let search = WindowSearch::new(&source, &opts.search)?;
        let report = classify_structure_with(&source, &opts.search, &opts.classify)?;
        let mut rows = Vec::new();
        let mut ok = true;
        for (&k, &want) in &expected.values {
            let mut cert = search.certify(k)?;
            let bound = structural_upper_bound(&report, k);
            if let Some(b) = bound {
                cert.apply_upper_bound(b);
            }
            ok &= cert.value == want;
            if name == "example-6.2" && k >= 2 {
                ok &= cert.exactness == Exactness::MatchesStructuralUpperBound;
            }
            rows.push(format!("k={k}: {} (want {want}, {})", cert.value, cert.exactness));
        }
        ok &= expected.classification.is_none_or(|c| c == report.classification);
        ok &= expected.m.is_none_or(|m| m == report.m);
        rows.push(format!("{} m={}", report.classification, report.m));
        checks.push(check(format!("golden table: {name}"), ok, rows.join("; ")));
    }

    let x = fibonacci();
    let x_config = SearchConfig { horizon: opts.search.horizon / 3, ..opts.search.clone() };
    let alpha = example_6_3();
    for k in 2..=5 {
        let detail;
        let ok = match nested_maximal_window(&x, k, &x_config)? {
            Some(tau) => {
                let t = tau.indices();
                let mut lifted: Vec<usize> = t[..k - 1].iter().map(|&i| 3 * i).collect();
                lifted.push(3 * t[k - 1] + 1);
                let w = Window::new(lifted)?;
                let count = tau_words(&alpha, &w, opts.search.scan_length)?.len();
                detail = format!("tau {tau}, lifted {w}: {count} words");
                count == 4 * k
            }
            None => {
                detail = "no nested maximal window within horizon".into();
                false
            }
        };
        checks.push(check(format!("example-6.3 witness family reaches 4k: k={k}"), ok, detail));
    }

    let alpha = example_6_2();
    let x_config = SearchConfig { horizon: opts.search.horizon / 5, ..opts.search.clone() };
    for k in 2..=5 {
        let tau = if k == 2 { Some(Window::block(1)?) } else { nested_maximal_window(&x, k - 1, &x_config)? };
        let (ok, detail) = match tau {
            Some(tau) => {
                let mut lifted: Vec<usize> = tau.indices().iter().map(|&i| 5 * i).collect();
                let floor = 5 * tau.max_index() + 1;
                lifted.push(floor + (11 - floor % 5) % 5);
                let w = Window::new(lifted)?;
                let count = tau_words(&alpha, &w, opts.search.scan_length)?.len();
                (count == 2 * k + 3, format!("lifted {w}: {count} words"))
            }
            None => (false, "no nested maximal window within horizon".into()),
        };
        checks.push(check(format!("example-6.2 witness family reaches 2k+3: k={k}"), ok, detail));
    }

    for k in 1..=8 {
        let n = tau_words(&x, &Window::block(k)?, 10_000)?.len();
        checks.push(check(format!("fibonacci block complexity k={k}"), n == k + 1, format!("{n} factors")));
    }
    let p = periodic_source(&[0, 1])?;
    let v = WindowSearch::new(&p, &opts.search)?.certify(3)?.value;
    checks.push(check("period-2 word has 2 words at k=3", v == 2, format!("value {v}")));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in SuiteName::ALL {
            assert_eq!(s.to_string().parse::<SuiteName>().unwrap(), s);
        }
        assert!("everything".parse::<SuiteName>().is_err());
    }

    #[test]
    fn oracle_examples() {
        let prefix = example_6_2().prefix(10_000).unwrap();
        assert_eq!(projection_oracle(&prefix, 64), Some((vec![2], 5)));
        assert_eq!(projection_oracle(&fibonacci().prefix(10_000).unwrap(), 64), None);
    }

    #[test]
    fn nested_windows_are_maximal_at_every_size() {
        let w = nested_maximal_window(&fibonacci(), 5, &SearchConfig::new(20, 5000)).unwrap().unwrap();
        for j in 1..=5 {
            let prefix = Window::new(w.indices()[..j].to_vec()).unwrap();
            assert_eq!(tau_words(&fibonacci(), &prefix, 5000).unwrap().len(), 2 * j);
        }
    }
}
