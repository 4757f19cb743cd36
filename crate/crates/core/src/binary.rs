//! Implicit binary max-heap, instrumented with the crate-wide counting convention.

use crate::counters::{OpCounters, Tally};
use crate::error::{HeapError, Result};
use crate::queue::MaxQueue;
use crate::Key;

#[derive(Debug, Clone)]
pub struct BinaryHeap<K, T = OpCounters> {
    slots: Vec<K>,
    tally: T,
}

impl<K: Key, T: Tally> BinaryHeap<K, T> {
    pub fn new() -> Self {
        Self::with_capacity(0)
    }

    /// Preallocates `capacity` slots; the array still grows by doubling past it.
    pub fn with_capacity(capacity: usize) -> Self {
        BinaryHeap { slots: Vec::with_capacity(capacity), tally: T::default() }
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.slots.capacity()
    }

    pub fn as_slice(&self) -> &[K] {
        &self.slots
    }

    #[inline]
    fn gt(&mut self, a: usize, b: usize) -> bool {
        self.tally.comparison();
        self.slots[a] > self.slots[b]
    }

    pub fn insert(&mut self, key: K) {
        self.slots.push(key);
        let mut i = self.slots.len() - 1;
        while i > 0 {
            let parent = (i - 1) / 2;
            if !self.gt(i, parent) {
                break;
            }
            self.slots.swap(i, parent);
            self.tally.entry_move();
            i = parent;
        }
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
        self.sift_down(0);
        Ok(top)
    }

    fn sift_down(&mut self, mut i: usize) {
        let n = self.slots.len();
        loop {
            let left = 2 * i + 1;
            if left >= n {
                break;
            }
            let right = left + 1;
            let larger = if right < n && self.gt(right, left) { right } else { left };
            if !self.gt(larger, i) {
                break;
            }
            self.slots.swap(i, larger);
            self.tally.entry_move();
            i = larger;
        }
    }

    /// True when every parent is at least as large as its children.
    pub fn is_heap_ordered(&self) -> bool {
        (1..self.slots.len()).all(|i| self.slots[(i - 1) / 2] >= self.slots[i])
    }

    pub fn counters(&self) -> OpCounters {
        self.tally.snapshot()
    }

    pub fn reset_counters(&mut self) {
        self.tally.reset();
    }

    pub(crate) fn tally_mut(&mut self) -> &mut T {
        &mut self.tally
    }

    pub(crate) fn into_keys(self) -> Vec<K> {
        self.slots
    }
}

impl<K: Key, T: Tally> Default for BinaryHeap<K, T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Key, T: Tally> MaxQueue<K> for BinaryHeap<K, T> {
    fn name(&self) -> String {
        "binary".to_string()
    }
    fn insert(&mut self, key: K) -> Result<()> {
        BinaryHeap::insert(self, key);
        Ok(())
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
