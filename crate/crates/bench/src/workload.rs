//! Insert/pop block workloads.
//!
//! Every kind runs the same shape: `insert_block` inserts, then `pop_block`
//! pops, repeated until the heap holds `n_max` keys (the run stops on the
//! insert that reaches it). The kind only picks the keys: `ratio` and
//! `ascending` insert `i` on the i-th insert, `descending` inserts `-i`, and
//! `random` draws uniformly from `0..=u32::MAX` with a seeded generator.

use std::fmt;
use std::str::FromStr;

use layered_heap::oracle::Op;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{BenchError, Result};

pub const DEFAULT_N_MAX: usize = 1 << 20;
pub const HARD_CAP: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WorkloadKind {
    Ratio,
    Ascending,
    Descending,
    Random,
}

impl fmt::Display for WorkloadKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WorkloadKind::Ratio => "ratio",
            WorkloadKind::Ascending => "ascending",
            WorkloadKind::Descending => "descending",
            WorkloadKind::Random => "random",
        })
    }
}

impl FromStr for WorkloadKind {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ratio" => Ok(WorkloadKind::Ratio),
            "ascending" => Ok(WorkloadKind::Ascending),
            "descending" => Ok(WorkloadKind::Descending),
            "random" => Ok(WorkloadKind::Random),
            other => Err(BenchError::Config(format!("unknown workload {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WorkloadSpec {
    pub kind: WorkloadKind,
    pub insert_block: usize,
    pub pop_block: usize,
    pub n_max: usize,
    pub seed: u64,
}

impl WorkloadSpec {
    pub fn new(kind: WorkloadKind, n_max: usize) -> Self {
        WorkloadSpec { kind, insert_block: 1000, pop_block: 100, n_max, seed: 0 }
    }

    /// Checks the block shape; `allow_large` lifts the size cap.
    pub fn validate(&self, allow_large: bool) -> Result<()> {
        if self.insert_block <= self.pop_block {
            return Err(BenchError::Config(format!(
                "insert block {} must exceed pop block {}",
                self.insert_block, self.pop_block
            )));
        }
        if self.n_max < self.insert_block {
            return Err(BenchError::Config(format!(
                "n-max {} is smaller than the insert block {}",
                self.n_max, self.insert_block
            )));
        }
        if self.n_max > HARD_CAP && !allow_large {
            return Err(BenchError::Config(format!(
                "n-max {} exceeds {HARD_CAP}; pass --i-have-time to run it anyway",
                self.n_max
            )));
        }
        Ok(())
    }

    pub fn ops(&self) -> Ops {
        Ops {
            spec: *self,
            rng: ChaCha8Rng::seed_from_u64(self.seed),
            inserted: 0,
            live: 0,
            in_block: 0,
            popping: false,
        }
    }
}

/// The operation stream of a workload; deterministic for a given spec.
pub struct Ops {
    spec: WorkloadSpec,
    rng: ChaCha8Rng,
    inserted: i64,
    live: usize,
    in_block: usize,
    popping: bool,
}

impl Iterator for Ops {
    type Item = Op<i64>;

    fn next(&mut self) -> Option<Op<i64>> {
        if self.live >= self.spec.n_max && !self.popping {
            return None;
        }
        if self.popping {
            if self.in_block < self.spec.pop_block && self.live > 0 {
                self.in_block += 1;
                self.live -= 1;
                return Some(Op::Pop);
            }
            self.popping = false;
            self.in_block = 0;
        }
        self.inserted += 1;
        self.live += 1;
        self.in_block += 1;
        if self.in_block == self.spec.insert_block {
            self.popping = true;
            self.in_block = 0;
        }
        if self.live >= self.spec.n_max {
            self.popping = false;
        }
        let key = match self.spec.kind {
            WorkloadKind::Ratio | WorkloadKind::Ascending => self.inserted,
            WorkloadKind::Descending => -self.inserted,
            WorkloadKind::Random => i64::from(self.rng.random::<u32>()),
        };
        Some(Op::Insert(key))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_blocks() {
        let mut spec = WorkloadSpec::new(WorkloadKind::Ratio, 8);
        spec.insert_block = 4;
        spec.pop_block = 2;
        let ops: Vec<_> = spec.ops().collect();
        let mut expected = Vec::new();
        let mut next = 1;
        // 4 in, 2 out, 4 in, 2 out, then 4 more reaches 8 live
        for round in 0..3 {
            for _ in 0..4 {
                expected.push(Op::Insert(next));
                next += 1;
            }
            if round < 2 {
                expected.extend([Op::Pop, Op::Pop]);
            }
        }
        assert_eq!(ops, expected);
    }

    #[test]
    fn stops_exactly_at_n_max() {
        let spec = WorkloadSpec::new(WorkloadKind::Descending, 2048);
        let mut live = 0i64;
        let mut peak = 0;
        for op in spec.ops() {
            match op {
                Op::Insert(k) => {
                    assert!(k < 0);
                    live += 1;
                }
                Op::Pop => live -= 1,
            }
            peak = peak.max(live);
        }
        assert_eq!(live, 2048);
        assert_eq!(peak, 2048);
    }

    #[test]
    fn random_is_seeded() {
        let mut spec = WorkloadSpec::new(WorkloadKind::Random, 3000);
        spec.seed = 9;
        let a: Vec<_> = spec.ops().collect();
        assert_eq!(a, spec.ops().collect::<Vec<_>>());
        spec.seed = 10;
        assert_ne!(a, spec.ops().collect::<Vec<_>>());
    }

    #[test]
    fn validation() {
        assert!(WorkloadSpec::new(WorkloadKind::Ratio, 10).validate(false).is_err());
        let mut s = WorkloadSpec::new(WorkloadKind::Ratio, 5000);
        s.pop_block = 1000;
        assert!(s.validate(false).is_err());
        assert!(WorkloadSpec::new(WorkloadKind::Ratio, HARD_CAP * 2).validate(false).is_err());
        assert!(WorkloadSpec::new(WorkloadKind::Ratio, HARD_CAP * 2).validate(true).is_ok());
        assert!("zigzag".parse::<WorkloadKind>().is_err());
    }
}
