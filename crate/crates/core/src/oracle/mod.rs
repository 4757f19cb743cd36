//! Differential testing against a sorted-multiset oracle: script generation
//! and enumeration, replay, exhaustive counterexample search with shrinking,
//! and fixture files for pinned outcomes.

mod diff;
mod fixture;
mod queue;
mod script;

pub use diff::{diff, minimal_counterexample, run_script, shrink, DiffResult, Divergence, ScriptFailure};
pub use fixture::Fixture;
pub use queue::OracleQueue;
pub use script::{enumerate_scripts, gen_random_script, permutations, Op, OpScript, Pattern, MAX_ENUMERATION};
