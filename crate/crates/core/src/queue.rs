use crate::counters::OpCounters;
use crate::error::Result;

/// The max-priority-queue contract every structure in this crate satisfies,
/// so scripts, the oracle, and the benchmark runner can drive them uniformly.
pub trait MaxQueue<K> {
    fn name(&self) -> String;
    fn insert(&mut self, key: K) -> Result<()>;
    fn pop_max(&mut self) -> Result<K>;
    fn peek_max(&self) -> Result<K>;
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    fn counters(&self) -> OpCounters;
    fn reset_counters(&mut self);
}

impl<K, Q: MaxQueue<K> + ?Sized> MaxQueue<K> for Box<Q> {
    fn name(&self) -> String {
        (**self).name()
    }
    fn insert(&mut self, key: K) -> Result<()> {
        (**self).insert(key)
    }
    fn pop_max(&mut self) -> Result<K> {
        (**self).pop_max()
    }
    fn peek_max(&self) -> Result<K> {
        (**self).peek_max()
    }
    fn len(&self) -> usize {
        (**self).len()
    }
    fn counters(&self) -> OpCounters {
        (**self).counters()
    }
    fn reset_counters(&mut self) {
        (**self).reset_counters()
    }
}
