use std::collections::BTreeMap;

use crate::counters::OpCounters;
use crate::error::{HeapError, Result};
use crate::queue::MaxQueue;
use crate::Key;

/// Sorted multiset; the ground truth every structure is diffed against.
#[derive(Debug, Clone, Default)]
pub struct OracleQueue<K> {
    counts: BTreeMap<K, usize>,
    len: usize,
}

impl<K: Key> OracleQueue<K> {
    pub fn new() -> Self {
        OracleQueue { counts: BTreeMap::new(), len: 0 }
    }
}

impl<K: Key> MaxQueue<K> for OracleQueue<K> {
    fn name(&self) -> String {
        "oracle".to_string()
    }

    fn insert(&mut self, key: K) -> Result<()> {
        *self.counts.entry(key).or_insert(0) += 1;
        self.len += 1;
        Ok(())
    }

    fn pop_max(&mut self) -> Result<K> {
        let mut last = self.counts.last_entry().ok_or(HeapError::Empty)?;
        let key = *last.key();
        *last.get_mut() -= 1;
        if *last.get() == 0 {
            last.remove();
        }
        self.len -= 1;
        Ok(key)
    }

    fn peek_max(&self) -> Result<K> {
        self.counts.last_key_value().map(|(k, _)| *k).ok_or(HeapError::Empty)
    }

    fn len(&self) -> usize {
        self.len
    }

    fn counters(&self) -> OpCounters {
        OpCounters::default()
    }

    fn reset_counters(&mut self) {}
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_semantics() {
        let mut q = OracleQueue::new();
        for k in [3, 7, 7, 1] {
            q.insert(k).unwrap();
        }
        assert_eq!(q.len(), 4);
        assert_eq!(q.peek_max(), Ok(7));
        assert_eq!(q.pop_max(), Ok(7));
        assert_eq!(q.pop_max(), Ok(7));
        assert_eq!(q.pop_max(), Ok(3));
        assert_eq!(q.pop_max(), Ok(1));
        assert_eq!(q.pop_max(), Err(HeapError::Empty));
        assert!(q.is_empty());
    }
}
