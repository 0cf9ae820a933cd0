//! One PASS/FAIL line per acceptance criterion; exits non-zero on any failure.

use std::collections::{BTreeMap, HashSet};
use std::process::ExitCode;
use std::time::Instant;

use mpc_core::complexity::{
    shared_window_search, structural_upper_bound, ComplexityCertificate, Exactness, SearchConfig, Strategy,
    WindowSearch,
};
use mpc_core::decompose::{
    classify_structure, decomposition_cycle, residue_graph, singular_letters, Classification, Verdict,
};
use mpc_core::generators::{example_6_1, example_6_2, example_6_3, fibonacci};
use mpc_core::harness::{aperiodic_roster, nested_maximal_window, periodic_roster, recurrent_pairs, RosterEntry};
use mpc_core::seqcore::{detect_least_period, observed_symbols, tau_words};
use mpc_core::{SequenceSource, Symbol, Window};

type Outcome = Result<String, String>;

fn protocol() -> SearchConfig {
    SearchConfig::new(60, 20_000)
}

fn values(source: &SequenceSource, config: &SearchConfig, ks: impl IntoIterator<Item = usize>) -> Vec<(usize, usize)> {
    let search = WindowSearch::new(source, config).expect("search");
    ks.into_iter().map(|k| (k, search.certify(k).expect("certify").value)).collect()
}

fn expect_all(label: &str, got: &[(usize, usize)], want: impl Fn(usize) -> usize) -> Result<(), String> {
    for &(k, v) in got {
        if v != want(k) {
            return Err(format!("{label}: k={k} measured {v}, expected {}", want(k)));
        }
    }
    Ok(())
}

fn render(vals: &[(usize, usize)]) -> String {
    vals.iter().map(|(_, v)| v.to_string()).collect::<Vec<_>>().join(",")
}

fn criterion_1() -> Outcome {
    let wide = SearchConfig::new(120, 20_000);
    let mut summary = Vec::new();
    for ell in 3..=5 {
        let alpha = example_6_1(ell).map_err(|e| e.to_string())?;
        let at60 = values(&alpha, &protocol(), 1..=5);
        expect_all(&format!("ell={ell} H=60"), &at60, |k| 2 * k + ell - 2)?;
        let at120 = values(&alpha, &wide, 1..=5);
        expect_all(&format!("ell={ell} H=120"), &at120, |k| 2 * k + ell - 2)?;
        summary.push(format!("ell={ell}: {}", render(&at60)));
    }
    Ok(format!("{}; unchanged at H=120", summary.join("; ")))
}

fn criterion_2() -> Outcome {
    let alpha = example_6_3();
    let got = values(&alpha, &protocol(), 2..=5);
    expect_all("H=60", &got, |k| 4 * k)?;
    let wide = values(&alpha, &SearchConfig::new(120, 20_000), 2..=5);
    expect_all("H=120", &wide, |k| 4 * k)?;
    let x = fibonacci();
    for k in 2..=5 {
        let tau = nested_maximal_window(&x, k, &SearchConfig::new(20, 20_000))
            .map_err(|e| e.to_string())?
            .ok_or(format!("no maximal window of size {k} for x"))?;
        let t = tau.indices();
        let mut lifted: Vec<usize> = t[..k - 1].iter().map(|&i| 3 * i).collect();
        lifted.push(3 * t[k - 1] + 1);
        let w = Window::new(lifted).map_err(|e| e.to_string())?;
        let n = tau_words(&alpha, &w, 20_000).map_err(|e| e.to_string())?.len();
        if n != 4 * k {
            return Err(format!("witness {w} gives {n}, expected {}", 4 * k));
        }
    }
    Ok(format!("values {}; witness family gives 4k for k=2..5", render(&got)))
}

fn criterion_3() -> Outcome {
    let alpha = example_6_2();
    let config = protocol();
    let report = classify_structure(&alpha, &config).map_err(|e| e.to_string())?;
    let search = WindowSearch::new(&alpha, &config).map_err(|e| e.to_string())?;
    let mut got = Vec::new();
    for k in 2..=5 {
        let mut cert = search.certify(k).map_err(|e| e.to_string())?;
        let bound = structural_upper_bound(&report, k).ok_or(format!("no structural bound at k={k}"))?;
        if bound != 2 * k + report.m - 2 {
            return Err(format!("k={k}: bound {bound} differs from 2k+m-2 with m={}", report.m));
        }
        cert.apply_upper_bound(bound);
        if cert.value != 2 * k + 3 || cert.exactness != Exactness::MatchesStructuralUpperBound {
            return Err(format!("k={k}: value {} ({}) expected {}", cert.value, cert.exactness, 2 * k + 3));
        }
        got.push((k, cert.value));
    }
    Ok(format!("values {} = 2k+m-2 with m={}, matches-structural-upper-bound", render(&got), report.m))
}

fn criterion_4() -> Outcome {
    let x = fibonacci();
    let got = values(&x, &protocol(), 1..=6);
    expect_all("fibonacci", &got, |k| 2 * k)?;
    for k in 1..=8 {
        let n = tau_words(&x, &Window::block(k).unwrap(), 10_000).map_err(|e| e.to_string())?.len();
        if n != k + 1 {
            return Err(format!("block k={k}: {n} factors"));
        }
    }
    Ok(format!("values {}; block counts k+1 for k=1..8", render(&got)))
}

struct Measured {
    entry: RosterEntry,
    certs: Vec<ComplexityCertificate>,
    greedy: Vec<usize>,
    period: bool,
    ell: usize,
}

impl Measured {
    fn aperiodic(&self) -> bool {
        !self.period && self.certs.iter().take(5).all(|c| c.value >= 2 * c.k)
    }

    fn low_k(&self) -> Option<usize> {
        self.certs.iter().find(|c| c.value < 2 * c.k).map(|c| c.k)
    }
}

fn measure(entries: Vec<RosterEntry>) -> Vec<Measured> {
    let config = protocol();
    entries
        .into_iter()
        .map(|entry| {
            let search = WindowSearch::new(&entry.source, &config).unwrap();
            let certs: Vec<_> = (1..=6).map(|k| search.certify(k).unwrap()).collect();
            let greedy = (1..=6).map(|k| search.certify_with(k, Strategy::Greedy).unwrap().value).collect();
            let period = detect_least_period(&entry.source, 20_000, 256).unwrap().is_some();
            let ell = observed_symbols(&entry.source.prefix(20_000).unwrap()).len();
            Measured { entry, certs, greedy, period, ell }
        })
        .collect()
}

fn criterion_5(aperiodic: &[Measured]) -> Outcome {
    let mut certified = 0;
    for m in aperiodic {
        if !m.aperiodic() {
            return Err(format!("{} did not certify as aperiodic", m.entry.name));
        }
        certified += 1;
        for c in m.certs.iter().take(5) {
            if c.value + 2 < 2 * c.k + m.ell {
                return Err(format!("{} k={}: {} < 2k+{}-2", m.entry.name, c.k, c.value, m.ell));
            }
        }
    }
    Ok(format!("{certified} certified-aperiodic sources, k=1..5"))
}

fn criterion_6(aperiodic: &[Measured], periodic: &[Measured]) -> Outcome {
    for m in periodic {
        if m.low_k().is_none() || !m.period {
            return Err(format!("{}: low k {:?}, period certificate {}", m.entry.name, m.low_k(), m.period));
        }
    }
    for m in aperiodic {
        if let Some(k) = m.low_k() {
            return Err(format!("{} drops to 2k-1 at k={k}", m.entry.name));
        }
    }
    Ok(format!("{} periodic sources drop below 2k, {} aperiodic sources never do", periodic.len(), aperiodic.len()))
}

fn criterion_7() -> Outcome {
    for ell in 3..=5 {
        let r = singular_letters(&example_6_1(ell).unwrap(), 20_000, 256).map_err(|e| e.to_string())?;
        let m = decomposition_cycle(&r);
        if m != ell - 1 {
            return Err(format!("ell={ell}: cycle {m}"));
        }
    }
    let g = residue_graph(&example_6_3(), 3, 20_000).map_err(|e| e.to_string())?;
    if g.components != vec![vec![0, 1], vec![2]] {
        return Err(format!("example 6.3 components {:?}", g.components));
    }
    let config = protocol();
    let r = classify_structure(&example_6_1(4).unwrap(), &config).map_err(|e| e.to_string())?;
    let constants: Vec<Option<Symbol>> = r.residues.iter().map(|s| s.constant_symbol).collect();
    if r.classification != Classification::StrongPatternSturmianStructure
        || r.m != 3
        || r.residues[0].verdict != Verdict::Aperiodic
        || r.residues[0].alphabet != vec![0, 1]
        || constants[1..] != [Some(2), Some(3)]
    {
        return Err(format!("example 6.1(4): {} m={} constants {constants:?}", r.classification, r.m));
    }
    let r = classify_structure(&example_6_2(), &config).map_err(|e| e.to_string())?;
    let constants: Vec<Option<Symbol>> = r.residues.iter().map(|s| s.constant_symbol).collect();
    if r.classification != Classification::PatternSturmianPlusConstants
        || r.m != 5
        || constants[1..] != [Some(2), Some(3), Some(3), Some(2)]
    {
        return Err(format!("example 6.2: {} m={} constants {constants:?}", r.classification, r.m));
    }
    let r = classify_structure(&example_6_3(), &config).map_err(|e| e.to_string())?;
    let aperiodic = r.residues.iter().filter(|s| s.verdict == Verdict::Aperiodic).count();
    if r.classification != Classification::Unclassified || aperiodic != 2 {
        return Err(format!("example 6.3: {} with {aperiodic} aperiodic residues", r.classification));
    }
    Ok("cycles 2,3,4; components {0,1},{2}; verdicts strong / plus-constants / unclassified".into())
}

fn criterion_8() -> Outcome {
    let config = protocol();
    let pairs = recurrent_pairs().map_err(|e| e.to_string())?;
    for (a, b) in &pairs {
        for k in 1..=4 {
            let w = shared_window_search(&a.source, &b.source, k, &config)
                .map_err(|e| e.to_string())?
                .ok_or(format!("{} / {} k={k}: no shared window within H=60", a.name, b.name))?;
            let na = tau_words(&a.source, &w, 20_000).map_err(|e| e.to_string())?.len();
            let nb = tau_words(&b.source, &w, 20_000).map_err(|e| e.to_string())?.len();
            if na < 2 * k || nb < 2 * k {
                return Err(format!("{} / {} k={k}: window {w} gives {na}, {nb}", a.name, b.name));
            }
        }
    }
    Ok(format!("{} pairs, k=1..4", pairs.len()))
}

/// Every window `{0 < h_1 < … }` with entries at most `horizon`, counted directly.
fn brute_force(source: &SequenceSource, k: usize, horizon: usize, scan: usize) -> usize {
    fn rec(source: &SequenceSource, idx: &mut Vec<usize>, k: usize, horizon: usize, scan: usize, best: &mut usize) {
        if idx.len() == k {
            let words: HashSet<Vec<Symbol>> =
                (0..scan).map(|n| idx.iter().map(|&h| source.at(n + h)).collect()).collect();
            *best = (*best).max(words.len());
            return;
        }
        let from = idx.last().map_or(0, |&l| l + 1);
        for h in from..=horizon {
            idx.push(h);
            rec(source, idx, k, horizon, scan, best);
            idx.pop();
        }
    }
    let mut best = 0;
    rec(source, &mut vec![0], k, horizon, scan, &mut best);
    best
}

fn criterion_9(all: &[&Measured]) -> Outcome {
    for m in all {
        for (c, &g) in m.certs.iter().zip(&m.greedy) {
            if g > c.value {
                return Err(format!("{} k={}: greedy {g} > exhaustive {}", m.entry.name, c.k, c.value));
            }
        }
    }
    let micro = SearchConfig::new(12, 2000);
    let mut cases = 0;
    for m in all {
        let search = WindowSearch::new(&m.entry.source, &micro).map_err(|e| e.to_string())?;
        for k in 1..=4 {
            let fast = search.certify(k).map_err(|e| e.to_string())?.value;
            let slow = brute_force(&m.entry.source, k, 12, 2000);
            if fast != slow {
                return Err(format!("{} k={k}: exhaustive {fast}, brute force {slow}", m.entry.name));
            }
            cases += 1;
        }
    }
    Ok(format!("greedy <= exhaustive on {} sources x k=1..6; {cases} micro cases agree", all.len()))
}

fn main() -> ExitCode {
    let started = Instant::now();
    let aperiodic = measure(aperiodic_roster().unwrap());
    let periodic = measure(periodic_roster().unwrap());
    let all: Vec<&Measured> = aperiodic.iter().chain(&periodic).collect();

    let mut results: BTreeMap<usize, (&str, Outcome)> = BTreeMap::new();
    let mut run = |n: usize, name: &'static str, f: &dyn Fn() -> Outcome| {
        let t = Instant::now();
        let outcome = f();
        eprintln!("criterion {n} took {:.1}s", t.elapsed().as_secs_f64());
        results.insert(n, (name, outcome));
    };
    run(1, "example 6.1 reproduction", &criterion_1);
    run(2, "example 6.3 reproduction", &criterion_2);
    run(3, "example 6.2 reproduction", &criterion_3);
    run(4, "pattern Sturmian baseline", &criterion_4);
    run(5, "lower bound 2k+l-2", &|| criterion_5(&aperiodic));
    run(6, "eventual periodicity criterion", &|| criterion_6(&aperiodic, &periodic));
    run(7, "decomposition", &criterion_7);
    run(8, "shared windows", &criterion_8);
    run(9, "oracle equivalence", &|| criterion_9(&all));

    let mut failed = 0;
    for (n, (name, outcome)) in &results {
        match outcome {
            Ok(detail) => println!("PASS  criterion {n}: {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {n}: {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed in {:.1}s", results.len() - failed, results.len(), started.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
