//! The single-queue acceptor for `{ w v c v π(w) : |w| = 2^|v| }` and its
//! closed-form step predictions.
//!
//! The acceptor stores `w v c v'` on the queue in real time. When the first
//! symbol of the final `{a,b}` block arrives it switches into cycling mode:
//! each cycle compares and drops every other `{a,b}` symbol against the
//! input, re-queues the survivors, moves the leading bit of the first stored
//! bit string into the finite control, re-queues the rest of it and `c`,
//! compares the control bit with the first bit after `c`, and re-queues the
//! remaining bits. The last cycle sees a single `{a,b}` symbol followed by
//! `c`. A final step checks that the input is exhausted.

use thiserror::Error;

use crate::machine::{
    Acceptance, Action, MachineSpec, Pattern, SpecBuilder, StorageAction, StorageSpec, Trace,
};

pub const LETTERS: [char; 2] = ['a', 'b'];
pub const BITS: [char; 2] = ['0', '1'];
pub const SEPARATOR: char = 'c';

/// State entered by the first comparison of every cycle.
pub const CYCLE_MARK_STATE: &str = "cyc_first";

/// Permutes a word whose length is a power of two: positions are listed by
/// increasing 2-adic valuation of their 1-based index (odd indices first,
/// then indices ≡ 2 mod 4, and so on, ending with the last index). Other
/// lengths are left unchanged.
pub fn pi<T: Clone>(w: &[T]) -> Vec<T> {
    let n = w.len();
    if !n.is_power_of_two() {
        return w.to_vec();
    }
    let mut out = Vec::with_capacity(n);
    let mut stride = 1;
    while stride <= n {
        out.extend((stride..=n).step_by(2 * stride).map(|i| w[i - 1].clone()));
        stride *= 2;
    }
    out
}

pub fn pi_str(w: &str) -> String {
    pi(&w.chars().collect::<Vec<_>>()).into_iter().collect()
}

fn act(consume: bool, queue: StorageAction, next: impl Into<String>) -> Action {
    Action { consume, storage: vec![queue], emit: None, next: next.into() }
}

fn pat(input: Pattern, front: Pattern) -> Vec<Pattern> {
    vec![input, front]
}

pub fn build_lprime_acceptor() -> MachineSpec {
    let mut b = SpecBuilder::new("lprime", "w_first")
        .input_alphabet("ab01c")
        .storage(StorageSpec::queue("q", "ab01c"))
        .acceptance(Acceptance::EmptyAllStorages)
        .epsilon_accept(false);
    let any = Pattern::Any;
    let sym = Pattern::sym;

    // Storing phase: {a,b}+ {0,1}* c {0,1}*, one symbol per step.
    for x in LETTERS {
        b.rule("w_first", pat(sym(x), any), act(true, StorageAction::push(x), "w"));
        b.rule("w", pat(sym(x), any), act(true, StorageAction::push(x), "w"));
    }
    for bit in BITS {
        b.rule("w", pat(sym(bit), any), act(true, StorageAction::push(bit), "v"));
        b.rule("v", pat(sym(bit), any), act(true, StorageAction::push(bit), "v"));
        b.rule("v2", pat(sym(bit), any), act(true, StorageAction::push(bit), "v2"));
    }
    for from in ["w", "v"] {
        b.rule(from, pat(sym(SEPARATOR), any), act(true, StorageAction::push(SEPARATOR), "v2"));
    }
    for x in LETTERS {
        b.rule("v2", pat(sym(x), any), act(false, StorageAction::Idle, "cmp_first"));
    }

    // Cycling phase.
    for x in LETTERS {
        b.rule("cmp_first", pat(sym(x), sym(x)), act(true, StorageAction::pop(), CYCLE_MARK_STATE));
        b.rule("cmp", pat(sym(x), sym(x)), act(true, StorageAction::pop(), "cyc"));
        b.rule(CYCLE_MARK_STATE, pat(any, sym(x)), act(false, StorageAction::pop_push(x), "cmp"));
        b.rule("cyc", pat(any, sym(x)), act(false, StorageAction::pop_push(x), "cmp"));
    }
    for bit in BITS {
        // Remaining bits after `c` are cycled until the next {a,b} block.
        b.rule("cmp_first", pat(any, sym(bit)), act(false, StorageAction::pop_push(bit), "cmp_first"));
        let held = format!("skip{bit}");
        b.rule("cmp", pat(any, sym(bit)), act(false, StorageAction::pop(), held.clone()));
        for other in BITS {
            b.rule(&held, pat(any, sym(other)), act(false, StorageAction::pop_push(other), held.clone()));
        }
        let check = format!("vcmp{bit}");
        b.rule(&held, pat(any, sym(SEPARATOR)), act(false, StorageAction::pop_push(SEPARATOR), check.clone()));
        b.rule(&check, pat(any, sym(bit)), act(false, StorageAction::pop(), "cmp_first"));
    }
    // A single {a,b} symbol followed directly by `c`: the last cycle.
    b.rule(CYCLE_MARK_STATE, pat(any, sym(SEPARATOR)), act(false, StorageAction::pop(), "end_check"));
    b.rule("end_check", pat(Pattern::EMPTY, Pattern::EMPTY), act(false, StorageAction::Idle, "accepted"));
    b.finish()
}

/// Largest run of non-consuming steps while the acceptor reads `w v c v`.
/// Every prefix step consumes, so the prefix is real-time.
pub const PREFIX_DELAY: usize = 0;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum FormulaError {
    #[error("cycle index {i} outside 1..={max}")]
    CycleOutOfRange { i: u64, max: u64 },
    #[error("k = {0} is too large for 64-bit step counts")]
    TooLarge(u64),
}

/// Queue length at the start of cycle `i` when `|v| = k`:
/// `2^(k−i+1) + 2(k−i+1) + 1`.
pub fn predicted_cycle_length(k: u64, i: u64) -> Result<u64, FormulaError> {
    if k > 60 {
        return Err(FormulaError::TooLarge(k));
    }
    if i == 0 || i > k + 1 {
        return Err(FormulaError::CycleOutOfRange { i, max: k + 1 });
    }
    let r = k + 1 - i;
    Ok((1u64 << r) + 2 * r + 1)
}

/// Steps after the `w v c v` prefix, closed form `2 + 2^(k+1) − 1 + k² + 2k + 1`.
pub fn predicted_tail_steps(k: u64) -> Result<u64, FormulaError> {
    if k > 60 {
        return Err(FormulaError::TooLarge(k));
    }
    Ok(2 + (1u64 << (k + 1)) - 1 + k * k + 2 * k + 1)
}

/// The same quantity as an explicit sum over cycles, `2 + Σ_{i=1}^{k+1} length(k, i)`.
pub fn predicted_tail_steps_sum(k: u64) -> Result<u64, FormulaError> {
    (1..=k + 1).try_fold(2, |acc, i| Ok(acc + predicted_cycle_length(k, i)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CyclePrediction {
    pub k: u64,
    pub i: u64,
    pub length: u64,
    pub tail_steps: u64,
}

pub fn cycle_predictions(k: u64) -> Result<Vec<CyclePrediction>, FormulaError> {
    let tail_steps = predicted_tail_steps(k)?;
    (1..=k + 1)
        .map(|i| Ok(CyclePrediction { k, i, length: predicted_cycle_length(k, i)?, tail_steps }))
        .collect()
}

/// Queue length at the start of each cycle, read off a trace of
/// [`build_lprime_acceptor`]: the length just before every step that enters
/// [`CYCLE_MARK_STATE`].
pub fn observed_cycle_lengths(trace: &Trace) -> Vec<usize> {
    trace
        .records()
        .iter()
        .enumerate()
        .filter(|(_, r)| trace.state_name(r.state) == CYCLE_MARK_STATE)
        .map(|(i, _)| trace.length_after(i, 0))
        .collect()
}

/// Number of leading steps that consumed input, i.e. the storing prefix.
pub fn prefix_steps(trace: &Trace) -> usize {
    trace.records().iter().take_while(|r| r.consumed).count()
}

/// Steps taken after the storing prefix.
pub fn observed_tail_steps(trace: &Trace) -> usize {
    trace.steps() - prefix_steps(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::{validate_spec, Machine, RunLimits};

    #[test]
    fn pi_small_cases() {
        assert_eq!(pi_str("a"), "a");
        assert_eq!(pi_str("ab"), "ab");
        assert_eq!(pi_str("aabb"), "abab");
        let idx: Vec<u32> = pi(&(1..=8).collect::<Vec<u32>>());
        assert_eq!(idx, vec![1, 3, 5, 7, 2, 6, 4, 8]);
        assert_eq!(pi_str("abbab"), "abbab");
        assert_eq!(pi_str(""), "");
    }

    #[test]
    fn formulas_match_substitution() {
        assert_eq!(predicted_cycle_length(3, 1), Ok(15));
        assert_eq!(predicted_cycle_length(3, 4), Ok(2));
        assert_eq!(predicted_cycle_length(0, 1), Ok(2));
        assert!(predicted_cycle_length(3, 5).is_err());
        assert!(predicted_cycle_length(3, 0).is_err());
        assert_eq!(predicted_tail_steps(0), Ok(4));
        assert_eq!(predicted_tail_steps(3), Ok(33));
        for k in 0..=20 {
            assert_eq!(predicted_tail_steps(k), predicted_tail_steps_sum(k), "k = {k}");
        }
    }

    #[test]
    fn acceptor_validates_cleanly() {
        let r = validate_spec(&build_lprime_acceptor());
        assert!(r.is_executable(), "{r}");
        assert!(r.warnings.is_empty(), "{r}");
    }

    #[test]
    fn acceptor_examples() {
        let m = Machine::new(build_lprime_acceptor()).unwrap();
        let run = |w: &str| m.run_str(w, RunLimits::default()).unwrap().accepted();
        assert!(run("aca"));
        assert!(!run("acb"));
        assert!(run("aabb00c00abab"));
        assert!(!run("aabb00c00aabb"));
        // |w| = 4 but 2^|v| = 2.
        assert!(!run("aabb0c0abab"));
        assert!(run("ab1c1ab"));
        assert!(!run("ab1c0ab"));
        assert!(!run(""));
        assert!(!run("c"));
    }

    #[test]
    fn k3_cycle_lengths() {
        let m = Machine::new(build_lprime_acceptor()).unwrap();
        let w = "abbabaab";
        let input = format!("{w}011c011{}", pi_str(w));
        let r = m.run_str(&input, RunLimits::traced()).unwrap();
        assert!(r.accepted());
        let t = r.trace.unwrap();
        assert_eq!(observed_cycle_lengths(&t), vec![15, 9, 5, 2]);
        assert_eq!(prefix_steps(&t), 15);
        assert_eq!(observed_tail_steps(&t), 33);
    }
}
