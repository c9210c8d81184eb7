//! Storage and machine model: queues, pushdown stores and multi-track tapes
//! driven by a deterministic finite control.
//!
//! In one step a machine may read at most one input symbol, pop at most one
//! symbol from and push at most one symbol onto each queue or pushdown, write
//! and move each tape head, emit at most one output symbol, and change state.
//! Every applied transition counts as exactly one step, whether or not it
//! consumes input.

mod exec;
mod format;
mod spec;
mod trace;
mod validate;

pub use exec::{
    Configuration, Fault, Machine, MachineError, RunLimits, RunResult, StepOutcome, Store, Tape,
    Verdict,
};
pub use format::{dump_spec, parse_spec, ParseError};
pub use spec::{
    Acceptance, Action, Alphabet, Look, MachineSpec, Mode, Pattern, Shift, SpecBuilder,
    StorageAction, StorageKind, StorageSpec, Symbol, Transition, BLANK, RESERVED,
};
pub use trace::{
    check_bounded_delay, check_realtime, longest_idle_run, storage_length_series, StepRecord, Trace,
};
pub use validate::{validate_spec, ValidationReport, Violation, Warning};
