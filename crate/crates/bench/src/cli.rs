//! Command-line front end. [`run`] returns the process exit code: 0 on
//! success, 1 when `check` finds a divergence. Errors surface as
//! [`BenchError`] and map to 2 in `main`.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use layered_heap::fit::Grid;
use layered_heap::oracle::{diff, minimal_counterexample, DiffResult, Fixture};
use layered_heap::{AnyQueue, OpCounters, PopMode, StructureKind};

use crate::error::{BenchError, Result};
use crate::memory::memory_report;
use crate::output::{write_csv, write_svg, Metric};
use crate::runner::{fit_exponent, run_benchmark, select, BenchConfig, BenchRecord, OpKind, TIMING_BLOCK};
use crate::workload::{WorkloadKind, WorkloadSpec, DEFAULT_N_MAX};

#[derive(Debug, Parser)]
#[command(name = "lheap", version, about = "Benchmark, adjudicate and replay layered heap runs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a block workload and report per-bucket counts and timings.
    Bench(BenchArgs),
    /// Search the exhaustive script family for the smallest divergence from the oracle.
    Adjudicate(AdjudicateArgs),
    /// Replay a fixture against a structure and the oracle.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SvgMetric {
    Comparisons,
    Ns,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated list: binary, fibonacci, layered, layered:M, faithful.
    #[arg(long, default_value = "layered")]
    pub structure: String,
    #[arg(long, default_value_t = 2)]
    pub layers: u32,
    #[arg(long, default_value = "ratio")]
    pub workload: WorkloadKind,
    #[arg(long, default_value_t = 1000)]
    pub insert_block: usize,
    #[arg(long, default_value_t = 100)]
    pub pop_block: usize,
    #[arg(long, default_value_t = DEFAULT_N_MAX)]
    pub n_max: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "comparisons")]
    pub svg_metric: SvgMetric,
    /// Fit mean comparisons against (log2 n)^alpha per structure and op.
    #[arg(long)]
    pub fit: bool,
    #[arg(long)]
    pub arity_override: Option<usize>,
    /// Allow the faithful transcription, whose pops may return wrong keys.
    #[arg(long)]
    pub unsafe_faithful: bool,
    /// Lift the 2^22 cap on n_max.
    #[arg(long)]
    pub i_have_time: bool,
    /// Print bytes per key for layered against binary at n_max.
    #[arg(long)]
    pub report_memory: bool,
    /// Skip the timing pass; total_ns is then 0.
    #[arg(long)]
    pub no_timing: bool,
    #[arg(long, default_value = "sift")]
    pub mode: PopMode,
}

#[derive(Debug, Args)]
pub struct AdjudicateArgs {
    #[arg(long, default_value = "faithful")]
    pub structure: String,
    #[arg(long, default_value_t = 2)]
    pub layers: u32,
    #[arg(long, default_value_t = 8)]
    pub m_max: usize,
    #[arg(long, default_value_t = 3)]
    pub arity_override: usize,
    #[arg(long, default_value = "sift")]
    pub mode: PopMode,
    /// Where to write the outcome; printed to stdout when absent.
    #[arg(long)]
    pub fixture: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub fixture: PathBuf,
    /// Replay against this structure instead of the one named by the fixture.
    #[arg(long)]
    pub structure: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub layers: u32,
}

pub fn run(cli: &Cli) -> Result<u8> {
    let mut out = std::io::stdout().lock();
    match &cli.command {
        Command::Bench(a) => bench(a, &mut out),
        Command::Adjudicate(a) => adjudicate(a, &mut out),
        Command::Check(a) => check(a, &mut out),
    }
}

fn say(out: &mut impl Write, text: std::fmt::Arguments<'_>) -> Result<()> {
    out.write_fmt(text).and_then(|_| out.write_all(b"\n")).map_err(|e| BenchError::io("stdout", e))
}

macro_rules! say {
    ($out:expr, $($t:tt)*) => { say($out, format_args!($($t)*)) };
}

fn parse_structures(list: &str, layers: u32, mode: PopMode) -> Result<Vec<StructureKind>> {
    let kinds = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| StructureKind::parse(s, layers, mode))
        .collect::<layered_heap::Result<Vec<_>>>()?;
    if kinds.is_empty() {
        return Err(BenchError::Config("no structure given".into()));
    }
    Ok(kinds)
}

pub fn bench(a: &BenchArgs, out: &mut impl Write) -> Result<u8> {
    let structures = parse_structures(&a.structure, a.layers, a.mode)?;
    let workload = WorkloadSpec {
        kind: a.workload,
        insert_block: a.insert_block,
        pop_block: a.pop_block,
        n_max: a.n_max,
        seed: a.seed,
    };
    workload.validate(a.i_have_time)?;

    let mut records: Vec<BenchRecord> = Vec::new();
    let mut labels = Vec::new();
    for kind in &structures {
        let config = BenchConfig {
            structure: *kind,
            arity_override: a.arity_override,
            allow_faithful: a.unsafe_faithful,
            timing: !a.no_timing,
        };
        let recs = run_benchmark(&config, &workload)?;
        let arity = recs.first().map_or(0, |r| r.arity);
        say!(out, "{}: {} buckets (arity {arity})", config.label(), recs.len())?;
        labels.push((config.label(), *kind));
        records.extend(recs);
    }

    if let Some(path) = &a.csv {
        let meta = vec![
            ("timing_block".to_string(), TIMING_BLOCK.to_string()),
            ("rounds".to_string(), "until_n_max".to_string()),
            ("workload".to_string(), workload.kind.to_string()),
            ("insert_block".to_string(), workload.insert_block.to_string()),
            ("pop_block".to_string(), workload.pop_block.to_string()),
            ("n_max".to_string(), workload.n_max.to_string()),
            ("seed".to_string(), workload.seed.to_string()),
        ];
        write_csv(&records, &meta, path)?;
        say!(out, "wrote {}", path.display())?;
    }
    if let Some(path) = &a.svg {
        let metric = match a.svg_metric {
            SvgMetric::Comparisons => Metric::MeanComparisons,
            SvgMetric::Ns => Metric::NsPerOp,
        };
        write_svg(&records, metric, path)?;
        say!(out, "wrote {}", path.display())?;
    }
    if a.fit {
        say!(out, "fit: mean comparisons ~ c * (log2 n)^alpha")?;
        for (label, kind) in &labels {
            for op in [OpKind::Insert, OpKind::Pop] {
                let sel = select(&records, label, kind.layers(), op);
                let claim = match (kind, op) {
                    (StructureKind::Layered { layers }, OpKind::Insert) => {
                        format!("claimed {:.3}", 1.0 / f64::from(*layers))
                    }
                    (StructureKind::Fibonacci, OpKind::Insert) => "expected 0.000".into(),
                    _ => "expected 1.000".into(),
                };
                match fit_exponent(&sel, Grid::standard()) {
                    Ok(f) => {
                        let ys: Vec<f64> = sel.iter().filter(|r| r.n_bucket >= 2).map(|r| r.mean_comparisons).collect();
                        say!(
                            out,
                            "  {kind} {op}: alpha={:.2} c={:.4} rmse={:.4} rel_rmse={:.4} ({claim})",
                            f.alpha,
                            f.c,
                            f.rmse,
                            f.relative_rmse(&ys)
                        )?
                    }
                    Err(e) => say!(out, "  {} {op}: no fit ({e})", kind)?,
                }
            }
        }
    }
    if !a.no_timing {
        report_speedups(&records, &labels, out)?;
    }
    if a.report_memory {
        let layers = structures
            .iter()
            .find_map(|k| match k {
                StructureKind::Layered { layers } => Some(*layers),
                _ => None,
            })
            .unwrap_or(a.layers);
        let report = memory_report(layers, workload.n_max, a.arity_override)?;
        say!(out, "{report}")?;
    }
    Ok(0)
}

/// Wall-time ratio against binary over all buckets, when binary was run.
fn report_speedups(records: &[BenchRecord], labels: &[(String, StructureKind)], out: &mut impl Write) -> Result<()> {
    let total = |label: &str, layers: u32, op: OpKind| -> u64 {
        select(records, label, layers, op).iter().map(|r| r.total_ns).sum()
    };
    if !labels.iter().any(|(l, _)| l == "binary") {
        return Ok(());
    }
    say!(out, "speedup against binary (wall time, this machine only):")?;
    for (label, kind) in labels.iter().filter(|(l, _)| l != "binary") {
        for op in [OpKind::Insert, OpKind::Pop] {
            let (b, s) = (total("binary", 1, op), total(label, kind.layers(), op));
            if s > 0 {
                say!(out, "  {kind} {op}: {:.2}x", b as f64 / s as f64)?;
            }
        }
    }
    Ok(())
}

fn fixture_name(kind: &StructureKind) -> String {
    match kind {
        StructureKind::Layered { layers } => format!("layered:{layers}"),
        other => other.name().to_string(),
    }
}

fn build(kind: StructureKind, capacity: usize, arity: usize) -> Result<AnyQueue<OpCounters>> {
    let arity = match kind {
        StructureKind::Layered { .. } | StructureKind::Faithful { .. } => Some(arity),
        _ => None,
    };
    Ok(kind.build(capacity, arity)?)
}

fn describe(result: &DiffResult<i64>) -> Vec<(String, String)> {
    match &result.divergence {
        None => Vec::new(),
        Some(d) => vec![
            ("op_index".into(), d.op_index.to_string()),
            ("expected".into(), d.expected.to_string()),
            (
                "actual".into(),
                match &d.actual {
                    Ok(k) => k.to_string(),
                    Err(e) => format!("error:{}", e.to_string().replace(' ', "_")),
                },
            ),
        ],
    }
}

pub fn adjudicate(a: &AdjudicateArgs, out: &mut impl Write) -> Result<u8> {
    let kind = StructureKind::parse(&a.structure, a.layers, a.mode)?;
    if matches!(kind, StructureKind::Oracle) {
        return Err(BenchError::Config("adjudicating the oracle against itself is meaningless".into()));
    }
    if a.m_max == 0 {
        return Err(BenchError::Config("m_max must be at least 1".into()));
    }
    // Fail on a bad arity before the search starts.
    build(kind, a.m_max, a.arity_override)?;
    let start = Instant::now();
    let found =
        minimal_counterexample(|m| build(kind, m, a.arity_override).expect("configuration was validated"), a.m_max)?;
    let elapsed = start.elapsed();

    let mut meta =
        BTreeMap::from([("m_max".to_string(), a.m_max.to_string()), ("search".to_string(), "exhaustive".to_string())]);
    let script = found.map(|(script, result)| {
        meta.extend(describe(&result));
        script
    });
    let fixture =
        Fixture { structure: fixture_name(&kind), arity: a.arity_override, mode: kind.mode_label(), meta, script };
    match &fixture.script {
        Some(s) => say!(out, "{kind} k={}: minimal diverging script {s}", a.arity_override)?,
        None => say!(out, "{kind} k={}: no divergence for m <= {}", a.arity_override, a.m_max)?,
    }
    say!(out, "search took {:.3}s", elapsed.as_secs_f64())?;
    let text = fixture.to_text();
    match &a.fixture {
        Some(path) => {
            write_text(path, &text)?;
            say!(out, "wrote {}", path.display())?;
        }
        None => out.write_all(text.as_bytes()).map_err(|e| BenchError::io("stdout", e))?,
    }
    Ok(0)
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| BenchError::io(format!("writing {}", path.display()), e))
}

/// Replays the fixture's script, or for a `result=none` fixture reruns the
/// exhaustive search up to its recorded `m_max`.
pub fn check(a: &CheckArgs, out: &mut impl Write) -> Result<u8> {
    let text = std::fs::read_to_string(&a.fixture)
        .map_err(|e| BenchError::io(format!("reading {}", a.fixture.display()), e))?;
    let fixture = Fixture::parse(&text)?;
    let mode = match fixture.mode.as_str() {
        "none" => PopMode::default(),
        m => m.parse()?,
    };
    let name = a.structure.as_deref().unwrap_or(&fixture.structure);
    let kind = StructureKind::parse(name, a.layers, mode)?;
    let k = fixture.arity;
    build(kind, 1, k)?;

    let outcome = match &fixture.script {
        Some(script) => {
            if !script.is_well_formed() {
                return Err(BenchError::Config("fixture script pops more than it inserts".into()));
            }
            let mut q = build(kind, script.max_live().max(1), k)?;
            let result = diff(&mut q, script);
            result.divergence.is_some().then(|| (script.clone(), result))
        }
        None => {
            let m_max: usize = fixture
                .meta
                .get("m_max")
                .ok_or_else(|| BenchError::Config("result=none fixture lacks m_max".into()))?
                .parse()
                .map_err(|_| BenchError::Config("fixture m_max is not a number".into()))?;
            minimal_counterexample(|m| build(kind, m, k).expect("configuration was validated"), m_max)?
        }
    };
    match outcome {
        Some((script, result)) => {
            let d = result.divergence.expect("divergent outcome");
            say!(
                out,
                "{kind} k={k}: DIVERGES on {} at op {}: expected {}, got {:?}",
                script,
                d.op_index,
                d.expected,
                d.actual
            )?;
            Ok(1)
        }
        None => {
            say!(out, "{kind} k={k}: matches the oracle")?;
            Ok(0)
        }
    }
}
