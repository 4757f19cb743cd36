use std::fmt;

use rayon::prelude::*;

use super::queue::OracleQueue;
use super::script::{permutations, Op, OpScript, Pattern};
use crate::error::{HeapError, Result};
use crate::queue::MaxQueue;
use crate::Key;

/// A structure error raised while replaying a script.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptFailure {
    pub op_index: usize,
    pub error: HeapError,
}

impl fmt::Display for ScriptFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "op {}: {}", self.op_index, self.error)
    }
}

impl std::error::Error for ScriptFailure {}

/// Replays `script` on `queue`, returning the popped keys in order.
pub fn run_script<K: Key, Q: MaxQueue<K> + ?Sized>(
    queue: &mut Q,
    script: &OpScript<K>,
) -> std::result::Result<Vec<K>, ScriptFailure> {
    let mut out = Vec::new();
    for (op_index, op) in script.ops.iter().enumerate() {
        match *op {
            Op::Insert(k) => queue.insert(k).map_err(|error| ScriptFailure { op_index, error })?,
            Op::Pop => out.push(queue.pop_max().map_err(|error| ScriptFailure { op_index, error })?),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divergence<K> {
    pub op_index: usize,
    pub expected: K,
    /// What the structure produced, or the error it raised.
    pub actual: std::result::Result<K, HeapError>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffResult<K> {
    pub divergence: Option<Divergence<K>>,
}

impl<K> DiffResult<K> {
    pub fn matches(&self) -> bool {
        self.divergence.is_none()
    }
}

/// Runs `script` on `queue` and on a fresh oracle, stopping at the first
/// operation where they disagree.
pub fn diff<K: Key, Q: MaxQueue<K> + ?Sized>(queue: &mut Q, script: &OpScript<K>) -> DiffResult<K> {
    let mut oracle = OracleQueue::new();
    for (op_index, op) in script.ops.iter().enumerate() {
        match *op {
            Op::Insert(k) => {
                oracle.insert(k).expect("oracle insert is infallible");
                if let Err(error) = queue.insert(k) {
                    // An insert the oracle accepts but the structure rejects is a divergence
                    // at the next pop that depends on it; report it here instead.
                    let expected = oracle.peek_max().expect("just inserted");
                    return DiffResult { divergence: Some(Divergence { op_index, expected, actual: Err(error) }) };
                }
            }
            Op::Pop => {
                let Ok(expected) = oracle.pop_max() else {
                    // ill-formed script: pop beyond what was inserted
                    continue;
                };
                let actual = queue.pop_max();
                if actual.as_ref() != Ok(&expected) {
                    return DiffResult { divergence: Some(Divergence { op_index, expected, actual }) };
                }
            }
        }
    }
    DiffResult { divergence: None }
}

/// Smallest diverging script over the exhaustive family for `m = 1..=m_max`,
/// both patterns, ordered by op count and then lexicographically by ops.
/// `factory(m)` builds a fresh, empty structure able to hold `m` keys.
///
/// Permutations are checked in parallel, one structure per script; the
/// answer does not depend on scheduling.
pub fn minimal_counterexample<Q, F>(factory: F, m_max: usize) -> Result<Option<(OpScript<i64>, DiffResult<i64>)>>
where
    Q: MaxQueue<i64>,
    F: Fn(usize) -> Q + Sync,
{
    for m in 1..=m_max {
        let perms = permutations(m)?;
        let found = perms
            .par_iter()
            .flat_map_iter(|perm| Pattern::ALL.into_iter().flat_map(move |p| p.scripts_for(perm)))
            .filter_map(|script| {
                let mut q = factory(m);
                let result = diff(&mut q, &script);
                (!result.matches()).then_some((script, result))
            })
            .min_by(|a, b| a.0.ops.len().cmp(&b.0.ops.len()).then_with(|| a.0.ops.cmp(&b.0.ops)));
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Shrinks a failing script while `fails` keeps returning true. Each step
/// removes an insert together with the first pop after it, or a single op,
/// keeping only candidates that stay well formed. Runs to a fixpoint.
pub fn shrink<K: Key>(script: &OpScript<K>, mut fails: impl FnMut(&OpScript<K>) -> bool) -> OpScript<K> {
    let without = |ops: &[Op<K>], drop: &[usize]| -> Vec<Op<K>> {
        ops.iter().enumerate().filter(|(j, _)| !drop.contains(j)).map(|(_, op)| *op).collect()
    };
    let mut current = script.clone();
    loop {
        let mut progressed = false;
        let mut i = 0;
        while i < current.ops.len() {
            let mut removals = Vec::with_capacity(2);
            if let Op::Insert(_) = current.ops[i] {
                if let Some(p) = current.ops[i + 1..].iter().position(|op| *op == Op::Pop) {
                    removals.push(vec![i, i + 1 + p]);
                }
            }
            removals.push(vec![i]);
            let accepted = removals.into_iter().find_map(|drop| {
                let candidate = OpScript {
                    ops: without(&current.ops, &drop),
                    seed: current.seed,
                    generator: current.generator.clone(),
                };
                (candidate.is_well_formed() && fails(&candidate)).then_some(candidate)
            });
            match accepted {
                Some(candidate) => {
                    current = candidate;
                    progressed = true;
                }
                None => i += 1,
            }
        }
        if !progressed {
            return current;
        }
    }
}
