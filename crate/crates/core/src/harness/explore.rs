//! Exhaustive verdicts for every word up to a length bound, by walking the
//! tree of input prefixes.
//!
//! An online machine only sees the next input symbol through its peek, so
//! the run on any word `u x y` agrees with the run on `u x` until `x` is
//! consumed. When the machine halts while peeking `x`, every word starting
//! with `u x` leaves input unread and is rejected; the whole subtree is
//! decided at once.

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::machine::{Acceptance, Configuration, Machine, Mode, RunLimits, StepOutcome, Symbol, Verdict};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExploreError {
    #[error("prefix exploration needs an online machine without output-bit acceptance")]
    Unsupported,
    #[error("symbol {0:?} is not in the input alphabet")]
    Alphabet(Symbol),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Exploration {
    pub accepted: BTreeSet<String>,
    /// Words whose verdict was decided.
    pub words: u128,
    /// Prefixes whose subtree hit the step budget before deciding.
    pub undetermined: Vec<String>,
    pub nodes: u64,
}

impl Exploration {
    fn merge(mut self, other: Exploration) -> Exploration {
        self.accepted.extend(other.accepted);
        self.words += other.words;
        self.undetermined.extend(other.undetermined);
        self.nodes += other.nodes;
        self
    }
}

/// Number of words of length at most `max_len` over `symbols` letters.
pub fn word_count(symbols: usize, max_len: usize) -> u128 {
    (0..=max_len).map(|l| (symbols as u128).pow(l as u32)).sum()
}

struct Walker<'a> {
    machine: &'a Machine,
    alphabet: &'a [Symbol],
    max_len: usize,
    budget: u64,
}

/// Depth at which the walk fans out to worker threads.
const SPLIT_DEPTH: usize = 3;

impl Walker<'_> {
    /// `config` has consumed exactly `prefix` and not halted.
    fn visit(
        &self,
        config: &Configuration,
        prefix: &mut Vec<Symbol>,
        out: &mut Exploration,
        spawn: &mut Option<&mut Vec<(Configuration, Vec<Symbol>)>>,
    ) {
        if let Some(tasks) = spawn.as_deref_mut() {
            if prefix.len() == SPLIT_DEPTH {
                tasks.push((config.clone(), prefix.clone()));
                return;
            }
        }
        out.nodes += 1;
        self.finish_word(config, prefix, out);
        if prefix.len() == self.max_len {
            return;
        }
        for &x in self.alphabet {
            prefix.push(x);
            let mut c = config.clone();
            loop {
                if c.steps > self.budget {
                    out.undetermined.push(prefix.iter().collect());
                    break;
                }
                match self.machine.step(&mut c, prefix) {
                    StepOutcome::Moved(rec) if rec.consumed => {
                        self.visit(&c, prefix, out, spawn);
                        break;
                    }
                    StepOutcome::Moved(_) => {}
                    StepOutcome::Halt | StepOutcome::Fault(_) => {
                        out.words += word_count(self.alphabet.len(), self.max_len - prefix.len());
                        break;
                    }
                }
            }
            prefix.pop();
        }
    }

    /// Runs `prefix` itself to its verdict, under the same limit as
    /// [`Machine::run`].
    fn finish_word(&self, config: &Configuration, prefix: &[Symbol], out: &mut Exploration) {
        let limit = RunLimits::default_max_steps(prefix.len());
        let mut c = config.clone();
        let verdict = loop {
            match self.machine.step(&mut c, prefix) {
                StepOutcome::Moved(_) if c.steps > limit => break Verdict::StepLimitExceeded,
                StepOutcome::Moved(_) => {}
                StepOutcome::Halt => break self.machine.verdict_on_halt(&c, prefix),
                StepOutcome::Fault(f) => break Verdict::Fault(f),
            }
        };
        if verdict == Verdict::Accept {
            out.accepted.insert(prefix.iter().collect());
        }
        out.words += 1;
    }
}

/// Decides every word over `alphabet` of length at most `max_len`; the
/// accepted ones are returned. `words` in the result equals
/// [`word_count`] unless some prefix ran out of step budget.
pub fn explore_words(machine: &Machine, alphabet: &[Symbol], max_len: usize) -> Result<Exploration, ExploreError> {
    let spec = machine.spec();
    if spec.mode != Mode::Online || spec.acceptance == Acceptance::OutputBit {
        return Err(ExploreError::Unsupported);
    }
    if let Some(&c) = alphabet.iter().find(|c| !spec.input_alphabet.contains(**c)) {
        return Err(ExploreError::Alphabet(c));
    }
    let walker = Walker { machine, alphabet, max_len, budget: RunLimits::default_max_steps(max_len) };
    let root = machine.initial_configuration(&[]).expect("empty input is always valid");
    let mut tasks = Vec::new();
    let mut out = Exploration::default();
    walker.visit(&root, &mut Vec::new(), &mut out, &mut Some(&mut tasks));
    let rest = tasks
        .into_par_iter()
        .map(|(config, mut prefix)| {
            let mut part = Exploration::default();
            walker.visit(&config, &mut prefix, &mut part, &mut None);
            part
        })
        .reduce(Exploration::default, Exploration::merge);
    let mut out = out.merge(rest);
    out.undetermined.sort();
    Ok(out)
}
