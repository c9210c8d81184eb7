//! Static machine descriptions: storages, observation patterns, actions and
//! the transition table.

use std::collections::BTreeSet;
use std::fmt;

/// A single storage or input symbol.
pub type Symbol = char;

/// Blank symbol of a tape cell that was never written.
pub const BLANK: Symbol = '_';

/// Characters that the textual machine format uses as syntax. They may not
/// appear in any alphabet.
pub const RESERVED: &[char] = &['|', ',', '*', '-', '=', '/', '+'];

/// A finite, ordered set of symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Alphabet(BTreeSet<Symbol>);

impl Alphabet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, sym: Symbol) -> bool {
        self.0.contains(&sym)
    }

    pub fn insert(&mut self, sym: Symbol) -> bool {
        self.0.insert(sym)
    }

    pub fn iter(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &Alphabet) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl FromIterator<Symbol> for Alphabet {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Alphabet(iter.into_iter().collect())
    }
}

impl From<&str> for Alphabet {
    fn from(s: &str) -> Self {
        s.chars().collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StorageKind {
    Queue,
    Pushdown,
    Tape,
}

impl StorageKind {
    pub fn name(self) -> &'static str {
        match self {
            StorageKind::Queue => "queue",
            StorageKind::Pushdown => "pushdown",
            StorageKind::Tape => "tape",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StorageSpec {
    pub id: String,
    pub kind: StorageKind,
    /// For tapes this is the per-track alphabet; [`BLANK`] is implicit.
    pub alphabet: Alphabet,
    pub tracks: usize,
}

impl StorageSpec {
    pub fn queue(id: impl Into<String>, alphabet: impl Into<Alphabet>) -> Self {
        Self { id: id.into(), kind: StorageKind::Queue, alphabet: alphabet.into(), tracks: 1 }
    }

    pub fn pushdown(id: impl Into<String>, alphabet: impl Into<Alphabet>) -> Self {
        Self { id: id.into(), kind: StorageKind::Pushdown, alphabet: alphabet.into(), tracks: 1 }
    }

    pub fn tape(id: impl Into<String>, alphabet: impl Into<Alphabet>, tracks: usize) -> Self {
        Self { id: id.into(), kind: StorageKind::Tape, alphabet: alphabet.into(), tracks }
    }

    /// Number of observation components this storage contributes.
    pub fn width(&self) -> usize {
        match self.kind {
            StorageKind::Tape => self.tracks,
            _ => 1,
        }
    }

    /// Whether `sym` may be observed in or written to one component of this
    /// storage.
    pub fn admits(&self, sym: Symbol) -> bool {
        self.alphabet.contains(sym) || (self.kind == StorageKind::Tape && sym == BLANK)
    }
}

/// What one observation component shows: a symbol, or nothing (empty queue,
/// empty pushdown, exhausted input).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Look {
    Empty,
    Sym(Symbol),
}

/// Pattern for one observation component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    Any,
    Is(Look),
}

impl Pattern {
    pub fn sym(c: Symbol) -> Self {
        Pattern::Is(Look::Sym(c))
    }

    pub const EMPTY: Pattern = Pattern::Is(Look::Empty);

    #[inline]
    pub fn matches(self, look: Look) -> bool {
        match self {
            Pattern::Any => true,
            Pattern::Is(l) => l == look,
        }
    }

    pub fn is_concrete(self) -> bool {
        matches!(self, Pattern::Is(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shift {
    Left,
    Stay,
    Right,
}

/// Effect of one step on one storage.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StorageAction {
    Idle,
    /// Queue or pushdown: optionally remove the front/top, then optionally
    /// add one symbol at the back/top.
    Buffer { pop: bool, push: Option<Symbol> },
    /// Tape: write per track (`None` keeps the cell), then move the head.
    Head { write: Vec<Option<Symbol>>, shift: Shift },
}

impl StorageAction {
    pub fn pop() -> Self {
        StorageAction::Buffer { pop: true, push: None }
    }

    pub fn push(c: Symbol) -> Self {
        StorageAction::Buffer { pop: false, push: Some(c) }
    }

    pub fn pop_push(c: Symbol) -> Self {
        StorageAction::Buffer { pop: true, push: Some(c) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Action {
    pub consume: bool,
    pub storage: Vec<StorageAction>,
    pub emit: Option<Symbol>,
    pub next: String,
}

/// One row of the transition table.
///
/// `pattern` is flattened: the input component first, then one component per
/// queue or pushdown and one per tape track, in storage declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub from: String,
    pub pattern: Vec<Pattern>,
    pub action: Action,
}

impl Transition {
    /// Specificity key: concrete beats wildcard componentwise, leftmost
    /// component most significant.
    pub fn specificity(&self) -> Vec<bool> {
        self.pattern.iter().map(|p| p.is_concrete()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Acceptance {
    /// Accept on halting with every storage empty and the input consumed.
    EmptyAllStorages,
    /// Accept on halting in one of these states with the input consumed.
    FinalStates(BTreeSet<String>),
    /// The last emitted symbol is the verdict (`1` accepts, `0` rejects).
    OutputBit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Separate one-way input tape.
    Online,
    /// No input tape; the input is preloaded onto storage 0, a queue.
    Post,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MachineSpec {
    pub name: String,
    pub states: Vec<String>,
    pub start: String,
    pub input_alphabet: Alphabet,
    pub output_alphabet: Alphabet,
    pub storages: Vec<StorageSpec>,
    pub transitions: Vec<Transition>,
    pub acceptance: Acceptance,
    pub mode: Mode,
    pub epsilon_accept: bool,
}

impl MachineSpec {
    /// Total number of observation components (input plus storages).
    pub fn pattern_width(&self) -> usize {
        1 + self.storages.iter().map(StorageSpec::width).sum::<usize>()
    }

    pub fn storage_index(&self, id: &str) -> Option<usize> {
        self.storages.iter().position(|s| s.id == id)
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }
}

/// Incremental construction of a [`MachineSpec`]. States are registered in
/// the order they are first mentioned.
#[derive(Debug)]
pub struct SpecBuilder {
    spec: MachineSpec,
}

impl SpecBuilder {
    pub fn new(name: impl Into<String>, start: impl Into<String>) -> Self {
        let start = start.into();
        SpecBuilder {
            spec: MachineSpec {
                name: name.into(),
                states: vec![start.clone()],
                start,
                input_alphabet: Alphabet::new(),
                output_alphabet: Alphabet::new(),
                storages: Vec::new(),
                transitions: Vec::new(),
                acceptance: Acceptance::EmptyAllStorages,
                mode: Mode::Online,
                epsilon_accept: false,
            },
        }
    }

    pub fn input_alphabet(mut self, a: impl Into<Alphabet>) -> Self {
        self.spec.input_alphabet = a.into();
        self
    }

    pub fn output_alphabet(mut self, a: impl Into<Alphabet>) -> Self {
        self.spec.output_alphabet = a.into();
        self
    }

    pub fn storage(mut self, s: StorageSpec) -> Self {
        self.spec.storages.push(s);
        self
    }

    pub fn acceptance(mut self, a: Acceptance) -> Self {
        self.spec.acceptance = a;
        self
    }

    pub fn mode(mut self, m: Mode) -> Self {
        self.spec.mode = m;
        self
    }

    pub fn epsilon_accept(mut self, yes: bool) -> Self {
        self.spec.epsilon_accept = yes;
        self
    }

    pub fn state(&mut self, name: &str) {
        if !self.spec.states.iter().any(|s| s == name) {
            self.spec.states.push(name.to_string());
        }
    }

    pub fn rule(&mut self, from: &str, pattern: Vec<Pattern>, action: Action) {
        self.state(from);
        self.state(&action.next);
        self.spec.transitions.push(Transition { from: from.to_string(), pattern, action });
    }

    pub fn finish(self) -> MachineSpec {
        self.spec
    }
}
