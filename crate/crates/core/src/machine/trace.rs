//! Per-step instrumentation and timing-discipline checks.

use std::fmt::Write as _;
use std::ops::Range;
use std::sync::Arc;

use super::exec::{MachineError, Verdict};
use super::spec::Symbol;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StepRecord {
    /// 1-based index of the transition.
    pub step: u64,
    /// State entered by the step.
    pub state: usize,
    /// Index of the transition in the spec's table.
    pub rule: usize,
    pub consumed: bool,
    pub emitted: Option<Symbol>,
}

/// Record of a traced run. Storage lengths are kept flat, one row of
/// `storage_ids.len()` entries per step, with row 0 holding the initial
/// lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    storage_ids: Vec<String>,
    state_names: Arc<[String]>,
    records: Vec<StepRecord>,
    lengths: Vec<usize>,
    verdict: Option<Verdict>,
}

impl Trace {
    pub(crate) fn new(storage_ids: Vec<String>, state_names: Arc<[String]>, initial: Vec<usize>) -> Self {
        Trace { storage_ids, state_names, records: Vec::new(), lengths: initial, verdict: None }
    }

    pub(crate) fn push(&mut self, rec: StepRecord, lengths: impl Iterator<Item = usize>) {
        self.records.push(rec);
        self.lengths.extend(lengths);
    }

    pub(crate) fn finish(&mut self, verdict: Verdict) {
        self.verdict = Some(verdict);
    }

    pub fn records(&self) -> &[StepRecord] {
        &self.records
    }

    pub fn steps(&self) -> usize {
        self.records.len()
    }

    pub fn verdict(&self) -> Option<Verdict> {
        self.verdict
    }

    pub fn state_name(&self, state: usize) -> &str {
        &self.state_names[state]
    }

    pub fn storage_ids(&self) -> &[String] {
        &self.storage_ids
    }

    pub fn input_consumed(&self) -> usize {
        self.records.iter().filter(|r| r.consumed).count()
    }

    pub fn output_len(&self) -> usize {
        self.records.iter().filter(|r| r.emitted.is_some()).count()
    }

    /// Length of storage `storage` after `step` steps (0 = initial).
    pub fn length_after(&self, step: usize, storage: usize) -> usize {
        self.lengths[step * self.storage_ids.len() + storage]
    }

    pub fn storage_length_series(&self, storage: &str) -> Result<Vec<(u64, usize)>, MachineError> {
        let idx = self
            .storage_ids
            .iter()
            .position(|s| s == storage)
            .ok_or_else(|| MachineError::UnknownStorage(storage.to_string()))?;
        Ok((1..=self.records.len()).map(|s| (s as u64, self.length_after(s, idx))).collect())
    }

    /// Renders the trace as `step,state,consumed,len(<id>)...,emit` lines
    /// under a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,state,consumed");
        for id in &self.storage_ids {
            let _ = write!(out, ",len({id})");
        }
        out.push_str(",emit\n");
        for (i, r) in self.records.iter().enumerate() {
            let _ = write!(out, "{},{},{}", r.step, self.state_names[r.state], u8::from(r.consumed));
            for s in 0..self.storage_ids.len() {
                let _ = write!(out, ",{}", self.length_after(i + 1, s));
            }
            let _ = writeln!(out, ",{}", r.emitted.unwrap_or('-'));
        }
        out
    }
}

/// True iff every step consumed exactly one input symbol.
pub fn check_realtime(trace: &Trace) -> bool {
    trace.records.iter().all(|r| r.consumed)
}

/// True iff, within the 0-based step `region`, no run of more than `d`
/// consecutive steps consumes no input. With `d = 0` this is the real-time
/// condition restricted to the region.
pub fn check_bounded_delay(trace: &Trace, region: Range<usize>, d: usize) -> bool {
    longest_idle_run(trace, region) <= d
}

/// Longest run of consecutive non-consuming steps inside `region`.
pub fn longest_idle_run(trace: &Trace, region: Range<usize>) -> usize {
    let end = region.end.min(trace.records.len());
    let start = region.start.min(end);
    let mut longest = 0;
    let mut run = 0;
    for r in &trace.records[start..end] {
        if r.consumed {
            run = 0;
        } else {
            run += 1;
            longest = longest.max(run);
        }
    }
    longest
}

pub fn storage_length_series(trace: &Trace, storage: &str) -> Result<Vec<(u64, usize)>, MachineError> {
    trace.storage_length_series(storage)
}
