//! Operation tallies shared by every queue so cost comparisons are fair.
//!
//! Every key-key ordering test is one comparison. Whole-entry relocations
//! (an entry swap inside a heap array, or a Fibonacci link) are entry moves.
//! Key-only exchanges that leave attached links behind are value swaps, and
//! every rewrite of a child group's back-link is a link fix.

use std::ops::{Add, Sub};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct OpCounters {
    pub comparisons: u64,
    pub entry_moves: u64,
    pub value_swaps: u64,
    pub link_fixes: u64,
}

impl Add for OpCounters {
    type Output = OpCounters;

    fn add(self, rhs: Self) -> Self {
        OpCounters {
            comparisons: self.comparisons + rhs.comparisons,
            entry_moves: self.entry_moves + rhs.entry_moves,
            value_swaps: self.value_swaps + rhs.value_swaps,
            link_fixes: self.link_fixes + rhs.link_fixes,
        }
    }
}

impl Sub for OpCounters {
    type Output = OpCounters;

    /// Difference of two snapshots taken from the same instance, later minus earlier.
    fn sub(self, rhs: Self) -> Self {
        OpCounters {
            comparisons: self.comparisons - rhs.comparisons,
            entry_moves: self.entry_moves - rhs.entry_moves,
            value_swaps: self.value_swaps - rhs.value_swaps,
            link_fixes: self.link_fixes - rhs.link_fixes,
        }
    }
}

/// Sink for operation events. [`OpCounters`] records them; [`NoCount`]
/// compiles them away for timing runs.
pub trait Tally: Default + Clone + std::fmt::Debug {
    fn comparison(&mut self);
    fn entry_move(&mut self);
    fn value_swap(&mut self);
    fn link_fix(&mut self);
    fn snapshot(&self) -> OpCounters;
    fn reset(&mut self);
}

impl Tally for OpCounters {
    #[inline(always)]
    fn comparison(&mut self) {
        self.comparisons += 1;
    }

    #[inline(always)]
    fn entry_move(&mut self) {
        self.entry_moves += 1;
    }

    #[inline(always)]
    fn value_swap(&mut self) {
        self.value_swaps += 1;
    }

    #[inline(always)]
    fn link_fix(&mut self) {
        self.link_fixes += 1;
    }

    fn snapshot(&self) -> OpCounters {
        *self
    }

    fn reset(&mut self) {
        *self = OpCounters::default();
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct NoCount;

impl Tally for NoCount {
    #[inline(always)]
    fn comparison(&mut self) {}

    #[inline(always)]
    fn entry_move(&mut self) {}

    #[inline(always)]
    fn value_swap(&mut self) {}

    #[inline(always)]
    fn link_fix(&mut self) {}

    fn snapshot(&self) -> OpCounters {
        OpCounters::default()
    }

    fn reset(&mut self) {}
}
