//! Named structure configurations and an enum over every queue in the
//! crate, so harnesses can pick one at run time and still dispatch
//! statically.

use std::fmt;

use crate::binary::BinaryHeap;
use crate::counters::{OpCounters, Tally};
use crate::error::{HeapError, Result};
use crate::faithful::{FaithfulHeap, PopMode};
use crate::fibonacci::FibHeap;
use crate::layered::LayeredHeap;
use crate::oracle::OracleQueue;
use crate::queue::MaxQueue;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StructureKind {
    Binary,
    Fibonacci,
    Layered { layers: u32 },
    Faithful { mode: PopMode },
    Oracle,
}

impl StructureKind {
    /// `name` is one of `binary`, `fibonacci`, `layered`, `faithful`,
    /// `oracle`; `layered:M` also works and overrides `layers`.
    pub fn parse(name: &str, layers: u32, mode: PopMode) -> Result<Self> {
        let (base, suffix) = match name.split_once(':') {
            Some((b, s)) => (b, Some(s)),
            None => (name, None),
        };
        let kind = match base {
            "binary" => StructureKind::Binary,
            "fibonacci" | "fib" => StructureKind::Fibonacci,
            "layered" => {
                let layers = match suffix {
                    Some(s) => s.parse().map_err(|_| HeapError::Config(format!("bad layer count in {name:?}")))?,
                    None => layers,
                };
                if layers < 1 {
                    return Err(HeapError::Config("layers must be at least 1".into()));
                }
                StructureKind::Layered { layers }
            }
            "faithful" => StructureKind::Faithful { mode },
            "oracle" => StructureKind::Oracle,
            _ => return Err(HeapError::Config(format!("unknown structure {name:?}"))),
        };
        if suffix.is_some() && !matches!(kind, StructureKind::Layered { .. }) {
            return Err(HeapError::Config(format!("unknown structure {name:?}")));
        }
        Ok(kind)
    }

    /// Name used in CSV rows and fixture headers.
    pub fn name(&self) -> &'static str {
        match self {
            StructureKind::Binary => "binary",
            StructureKind::Fibonacci => "fibonacci",
            StructureKind::Layered { .. } => "layered",
            StructureKind::Faithful { .. } => "faithful",
            StructureKind::Oracle => "oracle",
        }
    }

    pub fn layers(&self) -> u32 {
        match self {
            StructureKind::Layered { layers } => *layers,
            StructureKind::Faithful { .. } => 2,
            _ => 1,
        }
    }

    pub fn mode_label(&self) -> String {
        match self {
            StructureKind::Faithful { mode } => mode.to_string(),
            _ => "none".into(),
        }
    }

    pub fn build<T: Tally>(&self, capacity: usize, arity_override: Option<usize>) -> Result<AnyQueue<T>> {
        Ok(match *self {
            StructureKind::Binary => AnyQueue::Binary(BinaryHeap::with_capacity(capacity)),
            StructureKind::Fibonacci => AnyQueue::Fibonacci(FibHeap::with_capacity(capacity)),
            StructureKind::Layered { layers } => {
                AnyQueue::Layered(LayeredHeap::new(layers, capacity.max(1), arity_override)?)
            }
            StructureKind::Faithful { mode } => {
                AnyQueue::Faithful(FaithfulHeap::new(capacity.max(1), arity_override, mode)?)
            }
            StructureKind::Oracle => AnyQueue::Oracle(OracleQueue::new()),
        })
    }
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureKind::Layered { layers } => write!(f, "layered:{layers}"),
            StructureKind::Faithful { mode } => write!(f, "faithful:{mode}"),
            other => f.write_str(other.name()),
        }
    }
}

#[derive(Debug, Clone)]
pub enum AnyQueue<T = OpCounters> {
    Binary(BinaryHeap<i64, T>),
    Fibonacci(FibHeap<i64, T>),
    Layered(LayeredHeap<i64, T>),
    Faithful(FaithfulHeap<i64, T>),
    Oracle(OracleQueue<i64>),
}

impl<T: Tally> AnyQueue<T> {
    /// Fan-out of the underlying structure (2 for binary, 0 where it has none).
    pub fn arity(&self) -> usize {
        match self {
            AnyQueue::Binary(_) => 2,
            AnyQueue::Fibonacci(_) | AnyQueue::Oracle(_) => 0,
            AnyQueue::Layered(h) => h.arity(),
            AnyQueue::Faithful(h) => h.arity(),
        }
    }
}

macro_rules! each {
    ($self:expr, $q:ident => $e:expr) => {
        match $self {
            AnyQueue::Binary($q) => $e,
            AnyQueue::Fibonacci($q) => $e,
            AnyQueue::Layered($q) => $e,
            AnyQueue::Faithful($q) => $e,
            AnyQueue::Oracle($q) => $e,
        }
    };
}

impl<T: Tally> MaxQueue<i64> for AnyQueue<T> {
    fn name(&self) -> String {
        each!(self, q => q.name())
    }
    #[inline]
    fn insert(&mut self, key: i64) -> Result<()> {
        each!(self, q => MaxQueue::insert(q, key))
    }
    #[inline]
    fn pop_max(&mut self) -> Result<i64> {
        each!(self, q => MaxQueue::pop_max(q))
    }
    fn peek_max(&self) -> Result<i64> {
        each!(self, q => MaxQueue::peek_max(q))
    }
    fn len(&self) -> usize {
        each!(self, q => MaxQueue::len(q))
    }
    fn counters(&self) -> OpCounters {
        each!(self, q => MaxQueue::counters(q))
    }
    fn reset_counters(&mut self) {
        each!(self, q => MaxQueue::reset_counters(q))
    }
}
