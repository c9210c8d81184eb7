//! Deterministic execution with exact step accounting.

use std::collections::VecDeque;
use std::sync::Arc;

use thiserror::Error;

use super::spec::{
    Acceptance, Look, MachineSpec, Mode, Pattern, Shift, StorageAction, StorageKind, Symbol, BLANK,
};
use super::trace::{StepRecord, Trace};
use super::validate::{validate_spec, ValidationReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MachineError {
    #[error("machine spec is not executable:\n{0}")]
    Invalid(ValidationReport),
    #[error("input symbol {symbol:?} at position {position} is outside the input alphabet")]
    InputSymbol { position: usize, symbol: Symbol },
    #[error("unknown storage {0:?}")]
    UnknownStorage(String),
}

/// Runtime failures that are not ordinary halts.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    #[error("pop on empty storage {storage}")]
    PopOnEmpty { storage: usize },
    #[error("head of tape {storage} moved off the left end")]
    LeftOfTape { storage: usize },
}

/// A one-way infinite multi-track tape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tape {
    tracks: usize,
    /// Column-major: cell `i` occupies `cells[i * tracks..(i + 1) * tracks]`.
    cells: Vec<Symbol>,
    head: usize,
}

impl Tape {
    pub fn new(tracks: usize) -> Self {
        Tape { tracks, cells: vec![BLANK; tracks], head: 0 }
    }

    pub fn head(&self) -> usize {
        self.head
    }

    /// Number of cells visited so far.
    pub fn extent(&self) -> usize {
        self.cells.len() / self.tracks
    }

    pub fn column(&self, cell: usize) -> Vec<Symbol> {
        let at = cell * self.tracks;
        self.cells
            .get(at..at + self.tracks)
            .map(<[Symbol]>::to_vec)
            .unwrap_or_else(|| vec![BLANK; self.tracks])
    }

    /// Contents of one track over the visited region.
    pub fn track(&self, track: usize) -> String {
        self.cells.iter().skip(track).step_by(self.tracks).collect()
    }

    fn under_head(&self) -> &[Symbol] {
        let at = self.head * self.tracks;
        &self.cells[at..at + self.tracks]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Store {
    /// Front to back.
    Queue(VecDeque<Symbol>),
    /// Bottom to top.
    Pushdown(Vec<Symbol>),
    Tape(Tape),
}

impl Store {
    pub fn len(&self) -> usize {
        match self {
            Store::Queue(q) => q.len(),
            Store::Pushdown(p) => p.len(),
            Store::Tape(t) => t.extent(),
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            Store::Queue(q) => q.is_empty(),
            Store::Pushdown(p) => p.is_empty(),
            Store::Tape(t) => t.cells.iter().all(|&c| c == BLANK),
        }
    }

    /// Contents as a string (front-to-back, bottom-to-top, or track 0).
    pub fn contents(&self) -> String {
        match self {
            Store::Queue(q) => q.iter().collect(),
            Store::Pushdown(p) => p.iter().collect(),
            Store::Tape(t) => t.track(0),
        }
    }
}

/// Instantaneous description of a machine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    pub state: usize,
    pub input_position: usize,
    pub storages: Vec<Store>,
    pub output: Vec<Symbol>,
    pub steps: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject,
    /// Output-bit machines that halted without emitting a verdict symbol.
    HaltNoRule,
    StepLimitExceeded,
    Fault(Fault),
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Accept => "accept",
            Verdict::Reject => "reject",
            Verdict::HaltNoRule => "halt_no_rule",
            Verdict::StepLimitExceeded => "step_limit_exceeded",
            Verdict::Fault(_) => "fault",
        }
    }
}

/// Outcome of a single [`Machine::step`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    Moved(StepRecord),
    Halt,
    Fault(Fault),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunLimits {
    pub max_steps: Option<u64>,
    pub trace: bool,
}

impl RunLimits {
    pub fn traced() -> Self {
        RunLimits { max_steps: None, trace: true }
    }

    /// Limit used when none is given: 64·(n+1)².
    pub fn default_max_steps(input_len: usize) -> u64 {
        let n = input_len as u64 + 1;
        64u64.saturating_mul(n.saturating_mul(n))
    }
}

#[derive(Clone, Debug)]
pub struct RunResult {
    pub verdict: Verdict,
    pub output: String,
    pub steps: u64,
    pub input_consumed: usize,
    /// Largest length any single storage reached.
    pub max_storage_len: usize,
    pub final_state: String,
    pub config: Configuration,
    pub trace: Option<Trace>,
}

impl RunResult {
    pub fn accepted(&self) -> bool {
        self.verdict == Verdict::Accept
    }
}

#[derive(Clone, Debug)]
struct Rule {
    pattern: Box<[Pattern]>,
    consume: bool,
    storage: Box<[StorageAction]>,
    emit: Option<Symbol>,
    next: usize,
    index: usize,
}

/// A validated machine, ready to execute. Cheap to share between threads.
#[derive(Clone, Debug)]
pub struct Machine {
    spec: Arc<MachineSpec>,
    /// Per state, rules ordered from most to least specific.
    rules: Vec<Vec<Rule>>,
    finals: Vec<bool>,
    state_names: Arc<[String]>,
}

impl Machine {
    pub fn new(spec: MachineSpec) -> Result<Self, MachineError> {
        let report = validate_spec(&spec);
        if !report.is_executable() {
            return Err(MachineError::Invalid(report));
        }
        let index = |name: &str| spec.state_index(name).expect("validated");
        let mut rules: Vec<Vec<(Vec<bool>, Rule)>> = vec![Vec::new(); spec.states.len()];
        for (i, t) in spec.transitions.iter().enumerate() {
            rules[index(&t.from)].push((
                t.specificity(),
                Rule {
                    pattern: t.pattern.clone().into(),
                    consume: t.action.consume,
                    storage: t.action.storage.clone().into(),
                    emit: t.action.emit,
                    next: index(&t.action.next),
                    index: i,
                },
            ));
        }
        let rules = rules
            .into_iter()
            .map(|mut v| {
                // Stable: equal keys cannot both match (validated).
                v.sort_by(|a, b| b.0.cmp(&a.0));
                v.into_iter().map(|(_, r)| r).collect()
            })
            .collect();
        let finals = spec
            .states
            .iter()
            .map(|s| matches!(&spec.acceptance, Acceptance::FinalStates(f) if f.contains(s)))
            .collect();
        let state_names = spec.states.clone().into();
        Ok(Machine { spec: Arc::new(spec), rules, finals, state_names })
    }

    pub fn spec(&self) -> &MachineSpec {
        &self.spec
    }

    pub fn state_name(&self, state: usize) -> &str {
        &self.state_names[state]
    }

    pub fn initial_configuration(&self, input: &[Symbol]) -> Result<Configuration, MachineError> {
        if let Some((position, &symbol)) =
            input.iter().enumerate().find(|(_, c)| !self.spec.input_alphabet.contains(**c))
        {
            return Err(MachineError::InputSymbol { position, symbol });
        }
        let mut storages: Vec<Store> = self
            .spec
            .storages
            .iter()
            .map(|s| match s.kind {
                StorageKind::Queue => Store::Queue(VecDeque::new()),
                StorageKind::Pushdown => Store::Pushdown(Vec::new()),
                StorageKind::Tape => Store::Tape(Tape::new(s.tracks)),
            })
            .collect();
        if self.spec.mode == Mode::Post {
            if let Some(Store::Queue(q)) = storages.first_mut() {
                q.extend(input.iter().copied());
            }
        }
        Ok(Configuration {
            state: self.spec.state_index(&self.spec.start).expect("validated"),
            input_position: 0,
            storages,
            output: Vec::new(),
            steps: 0,
        })
    }

    fn observe(&self, config: &Configuration, input: &[Symbol], obs: &mut Vec<Look>) {
        obs.clear();
        obs.push(match (self.spec.mode, input.get(config.input_position)) {
            (Mode::Online, Some(&c)) => Look::Sym(c),
            _ => Look::Empty,
        });
        for store in &config.storages {
            match store {
                Store::Queue(q) => obs.push(q.front().map_or(Look::Empty, |&c| Look::Sym(c))),
                Store::Pushdown(p) => obs.push(p.last().map_or(Look::Empty, |&c| Look::Sym(c))),
                Store::Tape(t) => obs.extend(t.under_head().iter().map(|&c| Look::Sym(c))),
            }
        }
    }

    /// A consuming rule only applies while an input symbol is present.
    fn select(&self, state: usize, obs: &[Look]) -> Option<&Rule> {
        let at_end = obs[0] == Look::Empty;
        self.rules[state].iter().find(|r| {
            !(r.consume && at_end) && r.pattern.iter().zip(obs).all(|(p, &l)| p.matches(l))
        })
    }

    /// Applies the applicable transition, if any, to `config` in place.
    pub fn step(&self, config: &mut Configuration, input: &[Symbol]) -> StepOutcome {
        let mut obs = Vec::with_capacity(self.spec.pattern_width());
        self.step_with(config, input, &mut obs)
    }

    fn step_with(&self, config: &mut Configuration, input: &[Symbol], obs: &mut Vec<Look>) -> StepOutcome {
        self.observe(config, input, obs);
        let Some(rule) = self.select(config.state, obs) else {
            return StepOutcome::Halt;
        };
        // Faults are detected before anything is mutated.
        for (i, (store, act)) in config.storages.iter().zip(rule.storage.iter()).enumerate() {
            match (store, act) {
                (Store::Queue(_) | Store::Pushdown(_), StorageAction::Buffer { pop: true, .. })
                    if store.is_empty() =>
                {
                    return StepOutcome::Fault(Fault::PopOnEmpty { storage: i });
                }
                (Store::Tape(t), StorageAction::Head { shift: Shift::Left, .. }) if t.head == 0 => {
                    return StepOutcome::Fault(Fault::LeftOfTape { storage: i });
                }
                _ => {}
            }
        }
        let consumed = rule.consume;
        for (store, act) in config.storages.iter_mut().zip(rule.storage.iter()) {
            match (store, act) {
                (_, StorageAction::Idle) => {}
                (Store::Queue(q), StorageAction::Buffer { pop, push }) => {
                    if *pop {
                        q.pop_front();
                    }
                    if let Some(c) = push {
                        q.push_back(*c);
                    }
                }
                (Store::Pushdown(p), StorageAction::Buffer { pop, push }) => {
                    if *pop {
                        p.pop();
                    }
                    if let Some(c) = push {
                        p.push(*c);
                    }
                }
                (Store::Tape(t), StorageAction::Head { write, shift }) => {
                    let at = t.head * t.tracks;
                    for (cell, w) in t.cells[at..at + t.tracks].iter_mut().zip(write) {
                        if let Some(c) = w {
                            *cell = *c;
                        }
                    }
                    match shift {
                        Shift::Left => t.head -= 1,
                        Shift::Stay => {}
                        Shift::Right => {
                            t.head += 1;
                            if t.head == t.extent() {
                                t.cells.extend(std::iter::repeat_n(BLANK, t.tracks));
                            }
                        }
                    }
                }
                _ => unreachable!("action shape validated"),
            }
        }
        if consumed {
            config.input_position += 1;
        }
        if let Some(c) = rule.emit {
            config.output.push(c);
        }
        config.state = rule.next;
        config.steps += 1;
        StepOutcome::Moved(StepRecord {
            step: config.steps,
            state: rule.next,
            rule: rule.index,
            consumed,
            emitted: rule.emit,
        })
    }

    /// Runs `input` to completion.
    pub fn run(&self, input: &[Symbol], limits: RunLimits) -> Result<RunResult, MachineError> {
        let mut config = self.initial_configuration(input)?;
        let max_steps = limits.max_steps.unwrap_or_else(|| RunLimits::default_max_steps(input.len()));
        let mut trace = limits.trace.then(|| {
            Trace::new(
                self.spec.storages.iter().map(|s| s.id.clone()).collect(),
                self.state_names.clone(),
                config.storages.iter().map(Store::len).collect(),
            )
        });
        let mut max_len = config.storages.iter().map(Store::len).max().unwrap_or(0);
        let mut obs = Vec::with_capacity(self.spec.pattern_width());
        let verdict = loop {
            if config.steps >= max_steps {
                // A halt exactly at the limit still counts as a halt.
                self.observe(&config, input, &mut obs);
                if self.select(config.state, &obs).is_some() {
                    break Verdict::StepLimitExceeded;
                }
            }
            match self.step_with(&mut config, input, &mut obs) {
                StepOutcome::Moved(rec) => {
                    for s in &config.storages {
                        max_len = max_len.max(s.len());
                    }
                    if let Some(t) = trace.as_mut() {
                        t.push(rec, config.storages.iter().map(Store::len));
                    }
                }
                StepOutcome::Halt => break self.verdict_on_halt(&config, input),
                StepOutcome::Fault(f) => break Verdict::Fault(f),
            }
        };
        if let Some(t) = trace.as_mut() {
            t.finish(verdict);
        }
        Ok(RunResult {
            verdict,
            output: config.output.iter().collect(),
            steps: config.steps,
            input_consumed: config.input_position,
            max_storage_len: max_len,
            final_state: self.state_names[config.state].clone(),
            config,
            trace,
        })
    }

    /// Convenience wrapper over [`Machine::run`] for string input.
    pub fn run_str(&self, input: &str, limits: RunLimits) -> Result<RunResult, MachineError> {
        let input: Vec<Symbol> = input.chars().collect();
        self.run(&input, limits)
    }

    /// Verdict for a configuration in which no rule applies.
    pub fn verdict_on_halt(&self, config: &Configuration, input: &[Symbol]) -> Verdict {
        let input_done = self.spec.mode == Mode::Post || config.input_position == input.len();
        let accept = match &self.spec.acceptance {
            Acceptance::EmptyAllStorages => {
                input_done
                    && config.storages.iter().all(Store::is_empty)
                    && (!input.is_empty() || self.spec.epsilon_accept)
            }
            Acceptance::FinalStates(_) => {
                input_done
                    && self.finals[config.state]
                    && (!input.is_empty() || self.spec.epsilon_accept)
            }
            Acceptance::OutputBit => {
                return match config.output.last() {
                    Some('1') => Verdict::Accept,
                    Some('0') => Verdict::Reject,
                    _ => Verdict::HaltNoRule,
                }
            }
        };
        if accept {
            Verdict::Accept
        } else {
            Verdict::Reject
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::spec::{Action, SpecBuilder, StorageSpec};

    fn act(storage: Vec<StorageAction>, next: &str) -> Action {
        Action { consume: false, storage, emit: None, next: next.into() }
    }

    /// One queue preloaded through a copy phase, then a single scripted action.
    fn scripted(kind: StorageKind, action: StorageAction) -> (Machine, Configuration) {
        let store = match kind {
            StorageKind::Queue => StorageSpec::queue("s", "abc"),
            _ => StorageSpec::pushdown("s", "abc"),
        };
        let mut b = SpecBuilder::new("t", "go").input_alphabet("").storage(store);
        b.rule("go", vec![Pattern::Any, Pattern::Any], act(vec![action], "stop"));
        let m = Machine::new(b.finish()).unwrap();
        let mut c = m.initial_configuration(&[]).unwrap();
        c.storages[0] = match kind {
            StorageKind::Queue => Store::Queue(VecDeque::from(vec!['a', 'b'])),
            _ => Store::Pushdown(vec!['a', 'b']),
        };
        (m, c)
    }

    #[test]
    fn queue_pop_push_is_fifo() {
        let (m, mut c) = scripted(StorageKind::Queue, StorageAction::pop_push('c'));
        assert!(matches!(m.step(&mut c, &[]), StepOutcome::Moved(_)));
        assert_eq!(c.storages[0].contents(), "bc");
        assert_eq!(c.steps, 1);
    }

    #[test]
    fn pushdown_pop_push_is_lifo() {
        let (m, mut c) = scripted(StorageKind::Pushdown, StorageAction::pop_push('c'));
        m.step(&mut c, &[]);
        assert_eq!(c.storages[0].contents(), "ac");
    }

    #[test]
    fn no_rule_halts() {
        let (m, mut c) = scripted(StorageKind::Queue, StorageAction::Idle);
        m.step(&mut c, &[]);
        assert_eq!(m.step(&mut c, &[]), StepOutcome::Halt);
        assert_eq!(c.steps, 1);
    }

    #[test]
    fn wildcard_pop_on_empty_faults() {
        let (m, mut c) = scripted(StorageKind::Queue, StorageAction::pop());
        c.storages[0] = Store::Queue(VecDeque::new());
        assert_eq!(m.step(&mut c, &[]), StepOutcome::Fault(Fault::PopOnEmpty { storage: 0 }));
        assert_eq!(c.steps, 0);
    }

    #[test]
    fn input_outside_alphabet_names_position() {
        let mut b = SpecBuilder::new("t", "q").input_alphabet("abc").storage(StorageSpec::queue("s", "a"));
        b.state("q");
        let m = Machine::new(b.finish()).unwrap();
        let err = m.initial_configuration(&['a', '7', 'b']).unwrap_err();
        assert_eq!(err, MachineError::InputSymbol { position: 1, symbol: '7' });
        let ok = m.initial_configuration(&['a', 'c', 'a']).unwrap();
        assert_eq!(ok.input_position, 0);
        assert!(ok.storages[0].is_empty());
    }

    #[test]
    fn post_mode_preloads_queue() {
        let mut b = SpecBuilder::new("t", "q")
            .input_alphabet("ab")
            .storage(StorageSpec::queue("s", "ab"))
            .mode(Mode::Post);
        b.state("q");
        let m = Machine::new(b.finish()).unwrap();
        let c = m.initial_configuration(&['a', 'a', 'b', 'b']).unwrap();
        assert_eq!(c.storages[0].contents(), "aabb");
    }

    #[test]
    fn specificity_prefers_concrete_leftmost() {
        let mut b = SpecBuilder::new("t", "q")
            .input_alphabet("ab")
            .output_alphabet("xyz")
            .storage(StorageSpec::queue("s", "ab"));
        let emit = |c: char| Action { consume: true, storage: vec![StorageAction::Idle], emit: Some(c), next: "q".into() };
        b.rule("q", vec![Pattern::Any, Pattern::Any], emit('z'));
        b.rule("q", vec![Pattern::Any, Pattern::EMPTY], emit('y'));
        b.rule("q", vec![Pattern::sym('a'), Pattern::Any], emit('x'));
        let m = Machine::new(b.finish()).unwrap();
        // input a: rule 3 (input concrete) beats rule 2 (storage concrete).
        assert_eq!(m.run_str("aba", RunLimits::default()).unwrap().output, "xyx");
    }

    #[test]
    fn step_limit_is_reported() {
        let mut b = SpecBuilder::new("t", "q").input_alphabet("a").storage(StorageSpec::queue("s", "a"));
        b.rule("q", vec![Pattern::Any, Pattern::Any], act(vec![StorageAction::push('a')], "q"));
        let m = Machine::new(b.finish()).unwrap();
        let r = m.run_str("a", RunLimits { max_steps: Some(10), trace: false }).unwrap();
        assert_eq!(r.verdict, Verdict::StepLimitExceeded);
        assert_eq!(r.steps, 10);
    }
}
