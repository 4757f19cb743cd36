//! Layered ("heap of heaps") max-priority queues.
//!
//! [`LayeredHeap`] is the invariant-maintaining multi-layer heap.
//! [`FaithfulHeap`] transcribes the two-layer insert/pop procedures on a flat
//! array as literally as possible, so the two can be compared. [`BinaryHeap`]
//! and [`FibHeap`] are instrumented baselines, and [`oracle`] holds the
//! differential-testing machinery. All structures count operations with the
//! same convention (see [`counters`]).
//!
//! Structures are generic over the key type and over the event sink; the
//! aliases at the bottom of this file fix both for the common `i64` case.

pub mod arity;
pub mod binary;
pub mod counters;
pub mod error;
pub mod faithful;
pub mod fibonacci;
pub mod fit;
pub mod layered;
pub mod oracle;
pub mod queue;
pub mod shape;
pub mod structures;

pub use arity::compute_arity;
pub use binary::BinaryHeap;
pub use counters::{NoCount, OpCounters, Tally};
pub use error::{HeapError, Result};
pub use faithful::{FaithfulHeap, FaithfulViolationKind, PopMode, ViolationReport};
pub use fibonacci::FibHeap;
pub use fit::{fit_power_law, FitResult, Grid};
pub use layered::{CheckReport, LayeredHeap, Violation, ViolationKind};
pub use queue::MaxQueue;
pub use structures::{AnyQueue, StructureKind};

/// Keys need a total order and must be cheap to copy.
pub trait Key: Ord + Copy + std::fmt::Debug + Send + Sync {}

impl<T: Ord + Copy + std::fmt::Debug + Send + Sync> Key for T {}

pub type LayeredHeap64 = LayeredHeap<i64>;
pub type FaithfulHeap64 = FaithfulHeap<i64>;
pub type BinaryHeap64 = BinaryHeap<i64>;
pub type FibHeap64 = FibHeap<i64>;
pub type FitResult64 = FitResult<f64>;
pub type FitResult32 = FitResult<f32>;
