//! Literal flat-array transcription of the two-layer insert/pop procedures,
//! kept alongside the corrected heap so the two can be compared.
//!
//! Slots are 0-based. The k-ary parent of slot `n > 0` is `(n - 1) / k`, and
//! the children of slot `p` form the sibling group `p*k + 1 ..= p*k + k`,
//! laid out inside as an implicit binary heap with local parent
//! `(l - 1) / 2`. No ordering invariant is promised; [`FaithfulHeap::check`]
//! reports what the procedures actually left behind.

use std::fmt;
use std::str::FromStr;

use crate::arity::compute_arity;
use crate::counters::{OpCounters, Tally};
use crate::error::{HeapError, Result};
use crate::queue::MaxQueue;
use crate::Key;

/// How pop treats a value it has just swapped down into a group's top slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PopMode {
    /// Re-sift the value inside the group's binary layout, then keep
    /// descending from wherever it lands.
    #[default]
    Sift,
    /// Keep descending straight from the group's top slot.
    NoSift,
}

impl fmt::Display for PopMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PopMode::Sift => "sift",
            PopMode::NoSift => "nosift",
        })
    }
}

impl FromStr for PopMode {
    type Err = HeapError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sift" => Ok(PopMode::Sift),
            "nosift" => Ok(PopMode::NoSift),
            other => Err(HeapError::Config(format!("unknown pop mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FaithfulViolationKind {
    GroupLocalOrder,
    ParentVsGroupRoot,
    MaxNotAtRoot,
}

impl FaithfulViolationKind {
    // Tie-break when two checks fail at the same slot.
    fn rank(self) -> u8 {
        match self {
            FaithfulViolationKind::MaxNotAtRoot => 0,
            FaithfulViolationKind::ParentVsGroupRoot => 1,
            FaithfulViolationKind::GroupLocalOrder => 2,
        }
    }
}

impl fmt::Display for FaithfulViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FaithfulViolationKind::GroupLocalOrder => "group_local_order",
            FaithfulViolationKind::ParentVsGroupRoot => "parent_vs_group_root",
            FaithfulViolationKind::MaxNotAtRoot => "max_not_at_root",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ViolationReport {
    pub first_violation: Option<(FaithfulViolationKind, usize)>,
}

impl ViolationReport {
    pub fn ok(&self) -> bool {
        self.first_violation.is_none()
    }
}

#[derive(Debug, Clone)]
pub struct FaithfulHeap<K, T = OpCounters> {
    slots: Vec<K>,
    capacity: usize,
    arity: usize,
    mode: PopMode,
    tally: T,
}

impl<K: Key, T: Tally> FaithfulHeap<K, T> {
    /// Fixed-capacity heap. Without an override the arity is the two-layer
    /// formula for `capacity`, clamped into `2..=max(2, capacity)`.
    pub fn new(capacity: usize, arity_override: Option<usize>, mode: PopMode) -> Result<Self> {
        if capacity < 1 {
            return Err(HeapError::Config("capacity must be at least 1".into()));
        }
        let arity = match arity_override {
            Some(k) if k < 2 => return Err(HeapError::Config(format!("arity must be at least 2, got {k}"))),
            Some(k) => k,
            None => compute_arity(2, capacity as u64).min(capacity).max(2),
        };
        Ok(FaithfulHeap { slots: Vec::with_capacity(capacity), capacity, arity, mode, tally: T::default() })
    }

    /// Wraps an existing array without touching it.
    pub fn from_slots(slots: Vec<K>, arity: usize, mode: PopMode) -> Result<Self> {
        if arity < 2 {
            return Err(HeapError::Config(format!("arity must be at least 2, got {arity}")));
        }
        let capacity = slots.len().max(1);
        Ok(FaithfulHeap { slots, capacity, arity, mode, tally: T::default() })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn mode(&self) -> PopMode {
        self.mode
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn as_slice(&self) -> &[K] {
        &self.slots
    }

    #[inline]
    fn gt(&mut self, a: usize, b: usize) -> bool {
        self.tally.comparison();
        self.slots[a] > self.slots[b]
    }

    #[inline]
    fn kparent(&self, n: usize) -> usize {
        (n - 1) / self.arity
    }

    /// First slot of the sibling group containing slot `n > 0`.
    #[inline]
    fn group_start(&self, n: usize) -> usize {
        self.kparent(n) * self.arity + 1
    }

    pub fn insert(&mut self, key: K) -> Result<()> {
        if self.slots.len() == self.capacity {
            return Err(HeapError::Full { capacity: self.capacity });
        }
        self.slots.push(key);
        let mut n = self.slots.len() - 1;
        while n > 0 {
            let p = self.kparent(n);
            if self.gt(n, p) {
                self.slots.swap(n, p);
                self.tally.value_swap();
                n = p;
            } else {
                self.sift_up_in_group(n);
                break;
            }
        }
        Ok(())
    }

    fn sift_up_in_group(&mut self, n: usize) {
        let start = self.group_start(n);
        let mut l = n - start;
        while l > 0 {
            let lp = (l - 1) / 2;
            if !self.gt(start + l, start + lp) {
                break;
            }
            self.slots.swap(start + l, start + lp);
            self.tally.entry_move();
            l = lp;
        }
    }

    fn sift_down_in_group(&mut self, n: usize) -> usize {
        let start = self.group_start(n);
        let end = (start + self.arity).min(self.slots.len());
        let mut l = n - start;
        loop {
            let left = start + 2 * l + 1;
            if left >= end {
                break;
            }
            let right = left + 1;
            let larger = if right < end && self.gt(right, left) { right } else { left };
            if !self.gt(larger, start + l) {
                break;
            }
            self.slots.swap(start + l, larger);
            self.tally.entry_move();
            l = larger - start;
        }
        start + l
    }

    pub fn peek(&self) -> Result<K> {
        self.slots.first().copied().ok_or(HeapError::Empty)
    }

    pub fn pop(&mut self) -> Result<K> {
        let last = self.slots.pop().ok_or(HeapError::Empty)?;
        if self.slots.is_empty() {
            return Ok(last);
        }
        let top = std::mem::replace(&mut self.slots[0], last);
        let mut s = 0;
        loop {
            let child_top = s * self.arity + 1;
            if child_top >= self.slots.len() || !self.gt(child_top, s) {
                break;
            }
            self.slots.swap(s, child_top);
            self.tally.value_swap();
            s = match self.mode {
                PopMode::Sift => self.sift_down_in_group(child_top),
                PopMode::NoSift => child_top,
            };
        }
        Ok(top)
    }

    /// First violation in slot order among: binary order inside each sibling
    /// group, each parent against its group's top slot, and the root holding
    /// the maximum. At equal slots the root check wins, then the parent check.
    pub fn check(&self) -> ViolationReport {
        let a = &self.slots;
        let n = a.len();
        let mut found: Option<(FaithfulViolationKind, usize)> = None;
        let mut consider = |kind: FaithfulViolationKind, slot: usize| {
            let better = match found {
                None => true,
                Some((k, s)) => (slot, kind.rank()) < (s, k.rank()),
            };
            if better {
                found = Some((kind, slot));
            }
        };
        if let Some(slot) = (1..n).find(|&i| a[i] > a[0]) {
            consider(FaithfulViolationKind::MaxNotAtRoot, slot);
        }
        for i in 1..n {
            let start = self.group_start(i);
            if i == start {
                if a[self.kparent(i)] < a[i] {
                    consider(FaithfulViolationKind::ParentVsGroupRoot, i);
                }
            } else {
                let l = i - start;
                if a[start + (l - 1) / 2] < a[i] {
                    consider(FaithfulViolationKind::GroupLocalOrder, i);
                }
            }
        }
        ViolationReport { first_violation: found }
    }

    pub fn counters(&self) -> OpCounters {
        self.tally.snapshot()
    }

    pub fn reset_counters(&mut self) {
        self.tally.reset();
    }
}

impl<K: Key, T: Tally> MaxQueue<K> for FaithfulHeap<K, T> {
    fn name(&self) -> String {
        "faithful".to_string()
    }
    fn insert(&mut self, key: K) -> Result<()> {
        FaithfulHeap::insert(self, key)
    }
    fn pop_max(&mut self) -> Result<K> {
        self.pop()
    }
    fn peek_max(&self) -> Result<K> {
        self.peek()
    }
    fn len(&self) -> usize {
        self.slots.len()
    }
    fn counters(&self) -> OpCounters {
        self.tally.snapshot()
    }
    fn reset_counters(&mut self) {
        self.tally.reset();
    }
}
