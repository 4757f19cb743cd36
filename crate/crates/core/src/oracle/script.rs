use std::fmt;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{HeapError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Op<K> {
    Insert(K),
    Pop,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpScript<K> {
    pub ops: Vec<Op<K>>,
    pub seed: Option<u64>,
    pub generator: String,
}

impl<K: Copy> OpScript<K> {
    pub fn new(ops: Vec<Op<K>>, generator: impl Into<String>) -> Self {
        OpScript { ops, seed: None, generator: generator.into() }
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// No pop ever runs against an empty queue.
    pub fn is_well_formed(&self) -> bool {
        let mut live = 0usize;
        for op in &self.ops {
            match op {
                Op::Insert(_) => live += 1,
                Op::Pop if live == 0 => return false,
                Op::Pop => live -= 1,
            }
        }
        true
    }

    pub fn max_live(&self) -> usize {
        let mut live = 0usize;
        let mut peak = 0;
        for op in &self.ops {
            match op {
                Op::Insert(_) => live += 1,
                Op::Pop => live = live.saturating_sub(1),
            }
            peak = peak.max(live);
        }
        peak
    }
}

impl<K: fmt::Display> fmt::Display for OpScript<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .ops
            .iter()
            .map(|op| match op {
                Op::Insert(k) => format!("I{k}"),
                Op::Pop => "P".to_string(),
            })
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Seeded random script. A pop is drawn with `pop_probability` whenever the
/// queue is non-empty; otherwise an insert of a uniform key from `keys`.
pub fn gen_random_script(
    seed: u64,
    length: usize,
    keys: std::ops::RangeInclusive<i64>,
    pop_probability: f64,
) -> Result<OpScript<i64>> {
    if !(0.0..=1.0).contains(&pop_probability) {
        return Err(HeapError::Config(format!("pop probability {pop_probability} outside [0, 1]")));
    }
    if keys.is_empty() {
        return Err(HeapError::Config("empty key range".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut live = 0usize;
    let mut ops = Vec::with_capacity(length);
    for _ in 0..length {
        if live > 0 && rng.random_bool(pop_probability) {
            ops.push(Op::Pop);
            live -= 1;
        } else {
            ops.push(Op::Insert(rng.random_range(keys.clone())));
            live += 1;
        }
    }
    Ok(OpScript { ops, seed: Some(seed), generator: "random".into() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pattern {
    /// Insert a permutation of `1..=m`, then pop everything.
    InsertAllThenPopAll,
    /// Insert a permutation of `1..=m` with exactly one extra pop placed
    /// after the first `j` inserts, for every `j` in `2..m`, then pop the
    /// remaining `m - 1` keys.
    Interleaved,
}

impl Pattern {
    pub const ALL: [Pattern; 2] = [Pattern::InsertAllThenPopAll, Pattern::Interleaved];

    pub fn name(self) -> &'static str {
        match self {
            Pattern::InsertAllThenPopAll => "insert_all_then_pop_all",
            Pattern::Interleaved => "interleaved",
        }
    }

    /// Scripts this pattern derives from one permutation.
    pub fn scripts_for(self, perm: &[i64]) -> Vec<OpScript<i64>> {
        let m = perm.len();
        let inserts = |keys: &[i64]| keys.iter().map(|&k| Op::Insert(k)).collect::<Vec<_>>();
        match self {
            Pattern::InsertAllThenPopAll => {
                let mut ops = inserts(perm);
                ops.extend(std::iter::repeat_n(Op::Pop, m));
                vec![OpScript::new(ops, self.name())]
            }
            Pattern::Interleaved => (2..m)
                .map(|j| {
                    let mut ops = inserts(&perm[..j]);
                    ops.push(Op::Pop);
                    ops.extend(inserts(&perm[j..]));
                    ops.extend(std::iter::repeat_n(Op::Pop, m - 1));
                    OpScript::new(ops, self.name())
                })
                .collect(),
        }
    }
}

pub const MAX_ENUMERATION: usize = 9;

/// Every permutation of `1..=m`, in lexicographic order.
pub fn permutations(m: usize) -> Result<Vec<Vec<i64>>> {
    if m > MAX_ENUMERATION {
        return Err(HeapError::Config(format!("enumeration size {m} exceeds {MAX_ENUMERATION}")));
    }
    Ok((1..=m as i64).permutations(m).collect())
}

/// Lazily enumerates the scripts of `pattern` over keys `1..=m`.
pub fn enumerate_scripts(m: usize, pattern: Pattern) -> Result<impl Iterator<Item = OpScript<i64>>> {
    if m > MAX_ENUMERATION {
        return Err(HeapError::Config(format!("enumeration size {m} exceeds {MAX_ENUMERATION}")));
    }
    Ok((1..=m as i64).permutations(m).flat_map(move |perm| pattern.scripts_for(&perm)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_scripts_are_deterministic_and_well_formed() {
        let a = gen_random_script(1, 300, 1..=50, 0.4).unwrap();
        let b = gen_random_script(1, 300, 1..=50, 0.4).unwrap();
        assert_eq!(a, b);
        assert!(a.is_well_formed());
        assert_ne!(a, gen_random_script(2, 300, 1..=50, 0.4).unwrap());
    }

    #[test]
    fn zero_pop_probability_inserts_only() {
        let s = gen_random_script(7, 100, 0..=9, 0.0).unwrap();
        assert!(s.ops.iter().all(|op| matches!(op, Op::Insert(_))));
    }

    #[test]
    fn pop_probability_one_alternates() {
        let s = gen_random_script(7, 10, 0..=9, 1.0).unwrap();
        assert!(s.is_well_formed());
        assert_eq!(s.ops.iter().filter(|op| **op == Op::Pop).count(), 5);
    }

    #[test]
    fn bad_probability() {
        assert!(gen_random_script(1, 10, 0..=1, 1.5).is_err());
        assert!(gen_random_script(1, 10, 0..=1, -0.1).is_err());
    }

    #[test]
    fn narrow_ranges_yield_duplicates() {
        for seed in 0..100 {
            let s = gen_random_script(seed, 512, 1..=16, 0.3).unwrap();
            let mut keys: Vec<i64> = s
                .ops
                .iter()
                .filter_map(|op| match op {
                    Op::Insert(k) => Some(*k),
                    Op::Pop => None,
                })
                .collect();
            let total = keys.len();
            keys.sort_unstable();
            keys.dedup();
            assert!(total - keys.len() >= 2, "seed {seed}");
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_scripts(3, Pattern::InsertAllThenPopAll).unwrap().count(), 6);
        let one: Vec<_> = enumerate_scripts(1, Pattern::InsertAllThenPopAll).unwrap().collect();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].ops, vec![Op::Insert(1), Op::Pop]);
        assert_eq!(enumerate_scripts(8, Pattern::InsertAllThenPopAll).unwrap().count(), 40_320);
        assert_eq!(enumerate_scripts(2, Pattern::Interleaved).unwrap().count(), 0);
        assert_eq!(enumerate_scripts(4, Pattern::Interleaved).unwrap().count(), 24 * 2);
        assert!(enumerate_scripts(10, Pattern::Interleaved).is_err());
    }

    #[test]
    fn interleaved_layout() {
        let s = Pattern::Interleaved.scripts_for(&[3, 1, 2]);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].ops, vec![Op::Insert(3), Op::Insert(1), Op::Pop, Op::Insert(2), Op::Pop, Op::Pop]);
        for m in 1..=6 {
            for p in Pattern::ALL {
                for script in enumerate_scripts(m, p).unwrap() {
                    assert!(script.is_well_formed());
                    assert_eq!(script.len(), 2 * m);
                }
            }
        }
    }

    #[test]
    fn permutations_are_lexicographic() {
        let p = permutations(3).unwrap();
        assert_eq!(p[0], vec![1, 2, 3]);
        assert_eq!(p[5], vec![3, 2, 1]);
        assert!(p.windows(2).all(|w| w[0] < w[1]));
    }
}
