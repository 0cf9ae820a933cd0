//! `mpc`: maximal pattern complexity experiments from the command line.
//!
//! Exit status is 0 on success, 1 when measured values deviate from an
//! expectations file or a verification check fails, and 2 on usage or
//! validation errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mpc_core::complexity::{CongruenceFilter, Strategy};
use mpc_core::harness::{
    run, Expectations, ExperimentSpec, HarnessConfig, KRange, OutputFormat, SourceInput, SuiteName, Task,
};
use mpc_core::par::Parallelism;
use mpc_core::seqcore::literal::format_literal;

#[derive(Parser)]
#[command(name = "mpc", version, about = "Maximal pattern complexity of symbolic sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a prefix of a sequence in the literal format.
    Generate(GenerateArgs),
    /// Search windows for the largest word count, k by k.
    Complexity(RunArgs),
    /// Singular letters, decomposition cycle and residue graph.
    Decompose(RunArgs),
    /// Structure classification and structural upper bounds.
    Classify(RunArgs),
    /// First window on which two sequences both reach 2k words.
    SharedWindow(SharedArgs),
    /// Largest return gaps of the prefixes of length 1..=l-max.
    Recurrence(RunArgs),
    /// Run a verification suite over the built-in roster.
    Verify(VerifyArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SourceArgs {
    /// Generator spec (.toml) or literal file.
    #[arg(long, value_name = "FILE")]
    spec: Option<PathBuf>,
    /// Built-in family, e.g. fibonacci, example-6.1, example-6.3.
    #[arg(long, value_name = "NAME")]
    source: Option<String>,
    /// Literal prefix given inline, e.g. 0010.
    #[arg(long, value_name = "TEXT")]
    literal: Option<String>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct PartnerArgs {
    #[arg(long, value_name = "FILE")]
    spec_b: Option<PathBuf>,
    #[arg(long, value_name = "NAME")]
    source_b: Option<String>,
    #[arg(long, value_name = "TEXT")]
    literal_b: Option<String>,
}

#[derive(Args)]
struct Common {
    /// Defaults for the remaining flags.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Letter count for example-6.1.
    #[arg(long)]
    ell: Option<usize>,
    /// Window sizes, `MIN..MAX` (inclusive) or a single value.
    #[arg(long, value_name = "MIN..MAX")]
    k: Option<KRange>,
    #[arg(long, value_name = "N")]
    horizon: Option<usize>,
    #[arg(long, value_name = "N")]
    scan: Option<usize>,
    /// exhaustive, greedy or hybrid(N).
    #[arg(long)]
    strategy: Option<Strategy>,
    /// Restrict window indices to residues, e.g. `3:0,1`.
    #[arg(long, value_name = "M:R1,R2")]
    filter: Option<CongruenceFilter>,
    #[arg(long, value_name = "N")]
    max_period: Option<usize>,
    #[arg(long, value_name = "N")]
    l_max: Option<usize>,
    /// json, csv or text.
    #[arg(long)]
    format: Option<OutputFormat>,
    /// Expected values; a mismatch exits with status 1.
    #[arg(long, value_name = "FILE")]
    expect: Option<PathBuf>,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, value_name = "N")]
    workers: Option<usize>,
    /// Include the witness word sets in complexity reports.
    #[arg(long)]
    words: bool,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SharedArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    partner: PartnerArgs,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    /// facts, lower-bounds, growth, structure or examples.
    suite: SuiteName,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long)]
    ell: Option<usize>,
    /// Number of symbols to emit.
    #[arg(long, default_value_t = 1000)]
    length: usize,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn source_input(
    spec: Option<PathBuf>,
    name: Option<String>,
    literal: Option<String>,
    ell: Option<usize>,
) -> mpc_core::Result<SourceInput> {
    match (spec, name, literal) {
        (Some(path), _, _) => SourceInput::from_file(&path),
        (_, Some(name), _) => Ok(SourceInput::named(&name, ell)),
        (_, _, Some(text)) => Ok(SourceInput::literal(text.clone(), text)),
        _ => unreachable!("clap requires one source"),
    }
}

fn write_output(out: Option<&Path>, text: &str) -> mpc_core::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| mpc_core::Error::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(command: Command) -> mpc_core::Result<u8> {
    let (task, source, partner, suite, common) = match command {
        Command::Generate(args) => {
            let s = args.source;
            let input = source_input(s.spec, s.source, s.literal, args.ell)?;
            let seq = input.build()?;
            let mut text = format_literal(seq.alphabet(), &seq.prefix(args.length)?);
            if !text.ends_with('\n') {
                text.push('\n');
            }
            write_output(args.out.as_deref(), &text)?;
            return Ok(0);
        }
        Command::Complexity(a) => (Task::Complexity, Some(a.source), None, None, a.common),
        Command::Decompose(a) => (Task::Decompose, Some(a.source), None, None, a.common),
        Command::Classify(a) => (Task::Classify, Some(a.source), None, None, a.common),
        Command::Recurrence(a) => (Task::Recurrence, Some(a.source), None, None, a.common),
        Command::SharedWindow(a) => (Task::SharedWindow, Some(a.source), Some(a.partner), None, a.common),
        Command::Verify(a) => (Task::Verify, None, None, Some(a.suite), a.common),
    };

    let config = match &common.config {
        Some(path) => HarnessConfig::from_file(path)?,
        None => HarnessConfig::default(),
    };
    let mut spec = ExperimentSpec::new(task, &config);
    spec.source = source.map(|s| source_input(s.spec, s.source, s.literal, common.ell)).transpose()?;
    spec.partner = partner.map(|p| source_input(p.spec_b, p.source_b, p.literal_b, common.ell)).transpose()?;
    spec.suite = suite;
    if let Some(k) = common.k {
        spec.k = k;
    }
    if let Some(h) = common.horizon {
        spec.search.horizon = h;
    }
    if let Some(s) = common.scan {
        spec.search.scan_length = s;
    }
    if let Some(s) = common.strategy {
        spec.search.strategy = s;
    }
    if let Some(f) = common.filter {
        spec.search.congruence_filter = Some(f);
    }
    if let Some(p) = common.max_period {
        spec.classify.max_period = p;
    }
    if let Some(l) = common.l_max {
        spec.l_max = l;
    }
    if let Some(f) = common.format {
        spec.format = f;
    }
    if common.workers.is_some() {
        spec.search.parallelism = Parallelism::from_workers(common.workers);
    }
    spec.expect = common.expect.as_deref().map(Expectations::from_file).transpose()?;
    spec.with_words = common.words;

    let outcome = run(&spec)?;
    write_output(common.out.as_deref(), &outcome.document)?;
    if let Some(diff) = &outcome.diff {
        eprintln!("measured values differ from {}:", common.expect.as_deref().unwrap_or(Path::new("-")).display());
        eprint!("{diff}");
    }
    if task == Task::Verify && outcome.status != 0 {
        eprintln!("verification suite reported failures");
    }
    Ok(outcome.status as u8)
}
