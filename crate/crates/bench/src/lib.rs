//! Benchmark, adjudication and replay harness for the layered heap.

pub mod cli;
pub mod error;
pub mod memory;
pub mod output;
pub mod runner;
pub mod workload;

pub use error::{BenchError, Result};
pub use memory::{memory_report, MemoryReport};
pub use output::{csv_string, svg_string, write_csv, write_svg, Metric, CSV_HEADER};
pub use runner::{fit_exponent, run_benchmark, select, BenchConfig, BenchRecord, OpKind, TIMING_BLOCK};
pub use workload::{WorkloadKind, WorkloadSpec, DEFAULT_N_MAX, HARD_CAP};
