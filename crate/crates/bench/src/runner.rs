//! Bucketed measurement of a workload on one structure.
//!
//! Operation size `n` is the number of keys the operation sees: the size
//! after an insert, the size before a pop. Bucket `b` holds operations with
//! `floor(log2 n) = b` and is reported as `n_bucket = 2^b`.
//!
//! Counting and timing are separate passes. The timing pass builds the
//! structure with [`NoCount`], so no counter code runs, and reads a
//! monotonic clock once per chunk of up to [`TIMING_BLOCK`] consecutive
//! operations of the same kind and bucket.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use layered_heap::fit::{fit_power_law, FitResult, Grid};
use layered_heap::oracle::Op;
use layered_heap::{MaxQueue, NoCount, OpCounters, StructureKind, Tally};
use serde::Serialize;

use crate::error::{BenchError, Result};
use crate::workload::WorkloadSpec;

pub const TIMING_BLOCK: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OpKind {
    Insert,
    Pop,
}

impl fmt::Display for OpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OpKind::Insert => "insert",
            OpKind::Pop => "pop",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub structure: String,
    #[serde(rename = "M")]
    pub layers: u32,
    pub arity: usize,
    pub n_bucket: u64,
    pub op: OpKind,
    pub ops_count: u64,
    pub total_ns: u64,
    pub mean_comparisons: f64,
    pub mean_entry_moves: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchConfig {
    pub structure: StructureKind,
    pub arity_override: Option<usize>,
    /// Required to run the faithful transcription, whose pops may be wrong.
    pub allow_faithful: bool,
    pub timing: bool,
}

impl BenchConfig {
    pub fn new(structure: StructureKind) -> Self {
        BenchConfig { structure, arity_override: None, allow_faithful: false, timing: true }
    }

    /// Name written to the `structure` column.
    pub fn label(&self) -> String {
        match self.structure {
            StructureKind::Faithful { mode } => format!("faithful-{mode}-unsafe"),
            other => other.name().to_string(),
        }
    }
}

#[derive(Default, Clone, Copy)]
struct Bucket {
    ops: u64,
    comparisons: u64,
    entry_moves: u64,
    ns: u64,
}

fn bucket_of(n: usize) -> u32 {
    n.max(1).ilog2()
}

fn op_size(op: &Op<i64>, live: usize) -> (OpKind, usize) {
    match op {
        Op::Insert(_) => (OpKind::Insert, live + 1),
        Op::Pop => (OpKind::Pop, live),
    }
}

fn apply<Q: MaxQueue<i64>>(q: &mut Q, op: &Op<i64>, index: usize) -> Result<()> {
    let r = match op {
        Op::Insert(k) => q.insert(*k),
        Op::Pop => q.pop_max().map(|_| ()),
    };
    r.map_err(|e| BenchError::Config(format!("{} failed at workload op {index}: {e}", q.name())))
}

/// Runs `workload` on the configured structure and returns one record per
/// (operation kind, bucket), sorted by op then bucket.
pub fn run_benchmark(config: &BenchConfig, workload: &WorkloadSpec) -> Result<Vec<BenchRecord>> {
    workload.validate(true)?;
    if matches!(config.structure, StructureKind::Faithful { .. }) && !config.allow_faithful {
        return Err(BenchError::Config(
            "the faithful transcription can return wrong keys; pass --unsafe-faithful to benchmark it".into(),
        ));
    }
    if matches!(config.structure, StructureKind::Oracle) {
        return Err(BenchError::Config("the oracle is not a benchmark structure".into()));
    }
    let capacity = workload.n_max;
    let mut buckets: BTreeMap<(OpKind, u32), Bucket> = BTreeMap::new();

    let mut q = config.structure.build::<OpCounters>(capacity, config.arity_override)?;
    let arity = q.arity();
    let mut live = 0usize;
    for (i, op) in workload.ops().enumerate() {
        let (kind, n) = op_size(&op, live);
        let before = q.counters();
        apply(&mut q, &op, i)?;
        let delta = q.counters() - before;
        let b = buckets.entry((kind, bucket_of(n))).or_default();
        b.ops += 1;
        b.comparisons += delta.comparisons;
        b.entry_moves += delta.entry_moves;
        live = q.len();
    }
    drop(q);

    if config.timing {
        time_pass::<NoCount>(config, workload, &mut buckets)?;
    }

    let label = config.label();
    let layers = config.structure.layers();
    Ok(buckets
        .into_iter()
        .map(|((op, b), acc)| BenchRecord {
            structure: label.clone(),
            layers,
            arity,
            n_bucket: 1u64 << b,
            op,
            ops_count: acc.ops,
            total_ns: acc.ns,
            mean_comparisons: acc.comparisons as f64 / acc.ops as f64,
            mean_entry_moves: acc.entry_moves as f64 / acc.ops as f64,
        })
        .collect())
}

fn time_pass<T: Tally>(
    config: &BenchConfig,
    workload: &WorkloadSpec,
    buckets: &mut BTreeMap<(OpKind, u32), Bucket>,
) -> Result<()> {
    let mut q = config.structure.build::<T>(workload.n_max, config.arity_override)?;
    let mut ops = workload.ops().enumerate().peekable();
    let mut live = 0usize;
    let mut chunk: Vec<(usize, Op<i64>)> = Vec::with_capacity(TIMING_BLOCK);
    while let Some((i, op)) = ops.next() {
        let (kind, n) = op_size(&op, live);
        let bucket = bucket_of(n);
        chunk.clear();
        chunk.push((i, op));
        let mut sim = if kind == OpKind::Insert { live + 1 } else { live - 1 };
        while chunk.len() < TIMING_BLOCK {
            let Some((_, next)) = ops.peek() else { break };
            let (k2, n2) = op_size(next, sim);
            if k2 != kind || bucket_of(n2) != bucket {
                break;
            }
            sim = if k2 == OpKind::Insert { sim + 1 } else { sim - 1 };
            chunk.push(ops.next().expect("peeked"));
        }
        let start = Instant::now();
        for (j, op) in &chunk {
            apply(&mut q, op, *j)?;
        }
        let ns = start.elapsed().as_nanos() as u64;
        buckets.entry((kind, bucket)).or_default().ns += ns;
        live = sim;
    }
    Ok(())
}

/// Fits `mean_comparisons ~ c * (log2 n_bucket)^alpha` over records of one
/// structure and op. Buckets below `n = 2` carry no size information and
/// are skipped.
pub fn fit_exponent(records: &[&BenchRecord], grid: Grid<f64>) -> Result<FitResult<f64>> {
    let (xs, ys): (Vec<f64>, Vec<f64>) =
        records.iter().filter(|r| r.n_bucket >= 2).map(|r| ((r.n_bucket as f64).log2(), r.mean_comparisons)).unzip();
    Ok(fit_power_law(&xs, &ys, grid)?)
}

/// Records of one structure label, layer count and op, in bucket order.
pub fn select<'a>(records: &'a [BenchRecord], structure: &str, layers: u32, op: OpKind) -> Vec<&'a BenchRecord> {
    let mut v: Vec<&BenchRecord> =
        records.iter().filter(|r| r.structure == structure && r.layers == layers && r.op == op).collect();
    v.sort_by_key(|r| r.n_bucket);
    v
}
