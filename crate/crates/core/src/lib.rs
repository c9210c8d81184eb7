//! A laboratory for deterministic multi-storage machines.
//!
//! [`machine`] holds the queue/pushdown/tape model and its executor,
//! [`machines`] builds the concrete constructions studied here, [`oracles`]
//! provides independent reference implementations and instance generators,
//! and [`harness`] turns all of that into verification and growth reports.

pub mod harness;
pub mod machine;
pub mod machines;
pub mod oracles;

pub use machine::{Machine, MachineSpec, RunLimits, RunResult, Trace, Verdict};
