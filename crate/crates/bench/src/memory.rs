//! Allocated bytes per key for the layered heap against the binary heap.

use std::fmt;

use layered_heap::{BinaryHeap64, FibHeap64, LayeredHeap64};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MemoryReport {
    pub n: usize,
    pub layers: u32,
    pub arity: usize,
    pub layered_bytes_per_key: f64,
    pub binary_bytes_per_key: f64,
    pub fibonacci_bytes_per_key: f64,
}

impl MemoryReport {
    pub fn ratio(&self) -> f64 {
        self.layered_bytes_per_key / self.binary_bytes_per_key
    }

    /// Whether layered and binary use the same memory, to within 1%.
    pub fn identical(&self) -> bool {
        (self.ratio() - 1.0).abs() < 0.01
    }
}

impl fmt::Display for MemoryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "memory at n = {} (layered M={}, k={}):", self.n, self.layers, self.arity)?;
        writeln!(f, "  layered    {:8.3} bytes/key", self.layered_bytes_per_key)?;
        writeln!(f, "  binary     {:8.3} bytes/key", self.binary_bytes_per_key)?;
        writeln!(f, "  fibonacci  {:8.3} bytes/key", self.fibonacci_bytes_per_key)?;
        writeln!(f, "  layered / binary = {:.3}", self.ratio())?;
        let verdict = if self.identical() { "confirmed" } else { "refuted" };
        write!(f, "  identical-memory hypothesis: {verdict} (per-entry child links and group records)")
    }
}

/// Fills each structure with `n` ascending keys, sized for exactly `n`.
pub fn memory_report(layers: u32, n: usize, arity_override: Option<usize>) -> layered_heap::Result<MemoryReport> {
    let n = n.max(1);
    let mut layered = LayeredHeap64::new(layers, n, arity_override)?;
    let mut binary = BinaryHeap64::with_capacity(n);
    let mut fib = FibHeap64::with_capacity(n);
    for i in 0..n as i64 {
        layered.insert(i);
        binary.insert(i);
        fib.insert(i);
    }
    let per = |bytes: usize| bytes as f64 / n as f64;
    Ok(MemoryReport {
        n,
        layers,
        arity: layered.arity(),
        layered_bytes_per_key: per(layered.allocated_bytes()),
        binary_bytes_per_key: per(binary.capacity() * std::mem::size_of::<i64>()),
        fibonacci_bytes_per_key: per(fib.arena_bytes()),
    })
}
