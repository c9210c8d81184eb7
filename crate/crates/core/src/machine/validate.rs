//! Static checks on a [`MachineSpec`].

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use super::spec::{
    Acceptance, Look, MachineSpec, Mode, Pattern, StorageAction, StorageKind, BLANK, RESERVED,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Two rules of one state carry identical patterns, so the specificity
    /// order cannot separate them.
    Nondeterminism { state: String, first: usize, second: usize },
    AlphabetLeak { rule: usize, detail: String },
    InputReadInPostMode { rule: usize },
    UnknownState { rule: Option<usize>, state: String },
    DuplicateState(String),
    PatternWidth { rule: usize, expected: usize, found: usize },
    ActionShape { rule: usize, storage: usize, detail: String },
    BadStorage { storage: usize, detail: String },
    DuplicateStorage(String),
    ReservedSymbol { context: String, symbol: char },
    PostMode(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Nondeterminism { state, first, second } => write!(
                f,
                "nondeterminism in state {state}: rules #{first} and #{second} match the same observations"
            ),
            Violation::AlphabetLeak { rule, detail } => write!(f, "rule #{rule}: {detail}"),
            Violation::InputReadInPostMode { rule } => {
                write!(f, "rule #{rule}: input read in post mode")
            }
            Violation::UnknownState { rule: Some(rule), state } => {
                write!(f, "rule #{rule}: unknown state {state}")
            }
            Violation::UnknownState { rule: None, state } => write!(f, "unknown state {state}"),
            Violation::DuplicateState(s) => write!(f, "state {s} declared twice"),
            Violation::PatternWidth { rule, expected, found } => write!(
                f,
                "rule #{rule}: pattern has {found} components, machine observes {expected}"
            ),
            Violation::ActionShape { rule, storage, detail } => {
                write!(f, "rule #{rule}: storage {storage}: {detail}")
            }
            Violation::BadStorage { storage, detail } => write!(f, "storage {storage}: {detail}"),
            Violation::DuplicateStorage(id) => write!(f, "storage {id} declared twice"),
            Violation::ReservedSymbol { context, symbol } => {
                write!(f, "{context}: reserved symbol {symbol:?}")
            }
            Violation::PostMode(detail) => write!(f, "post mode: {detail}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Warning {
    UnreachableState(String),
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::UnreachableState(s) => write!(f, "state {s} is unreachable"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Warning>,
}

impl ValidationReport {
    /// True when the spec can be executed.
    pub fn is_executable(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "error: {v}")?;
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}

pub fn validate_spec(spec: &MachineSpec) -> ValidationReport {
    let mut report = ValidationReport::default();
    let v = &mut report.violations;

    let mut seen = BTreeSet::new();
    for s in &spec.states {
        if !seen.insert(s.as_str()) {
            v.push(Violation::DuplicateState(s.clone()));
        }
    }
    if !seen.contains(spec.start.as_str()) {
        v.push(Violation::UnknownState { rule: None, state: spec.start.clone() });
    }
    if let Acceptance::FinalStates(finals) = &spec.acceptance {
        for s in finals {
            if !seen.contains(s.as_str()) {
                v.push(Violation::UnknownState { rule: None, state: s.clone() });
            }
        }
    }

    let reserved = |context: String, alphabet: &super::spec::Alphabet, v: &mut Vec<Violation>| {
        for c in alphabet.iter() {
            if RESERVED.contains(&c) || c.is_whitespace() {
                v.push(Violation::ReservedSymbol { context: context.clone(), symbol: c });
            }
        }
    };
    reserved("input alphabet".into(), &spec.input_alphabet, v);
    reserved("output alphabet".into(), &spec.output_alphabet, v);

    let mut ids = BTreeSet::new();
    for (i, st) in spec.storages.iter().enumerate() {
        if !ids.insert(st.id.as_str()) {
            v.push(Violation::DuplicateStorage(st.id.clone()));
        }
        reserved(format!("storage {}", st.id), &st.alphabet, v);
        if st.kind == StorageKind::Tape {
            if st.tracks == 0 {
                v.push(Violation::BadStorage { storage: i, detail: "tape needs at least one track".into() });
            }
            if st.alphabet.contains(BLANK) {
                v.push(Violation::BadStorage { storage: i, detail: "blank listed in tape alphabet".into() });
            }
        } else if st.tracks != 1 {
            v.push(Violation::BadStorage { storage: i, detail: "only tapes have tracks".into() });
        }
        if st.kind != StorageKind::Tape && st.alphabet.contains(BLANK) {
            v.push(Violation::ReservedSymbol { context: format!("storage {}", st.id), symbol: BLANK });
        }
    }

    if spec.mode == Mode::Post {
        match spec.storages.first() {
            Some(s) if s.kind == StorageKind::Queue => {
                if !spec.input_alphabet.is_subset(&s.alphabet) {
                    v.push(Violation::PostMode("input alphabet not contained in storage 0".into()));
                }
            }
            _ => v.push(Violation::PostMode("storage 0 must be a queue".into())),
        }
    }

    let width = spec.pattern_width();
    let mut by_pattern: HashMap<(&str, &[Pattern]), usize> = HashMap::new();
    for (r, t) in spec.transitions.iter().enumerate() {
        if !seen.contains(t.from.as_str()) {
            v.push(Violation::UnknownState { rule: Some(r), state: t.from.clone() });
        }
        if !seen.contains(t.action.next.as_str()) {
            v.push(Violation::UnknownState { rule: Some(r), state: t.action.next.clone() });
        }
        if t.pattern.len() != width {
            v.push(Violation::PatternWidth { rule: r, expected: width, found: t.pattern.len() });
            continue;
        }
        if let Some(&first) = by_pattern.get(&(t.from.as_str(), t.pattern.as_slice())) {
            v.push(Violation::Nondeterminism { state: t.from.clone(), first, second: r });
        } else {
            by_pattern.insert((t.from.as_str(), t.pattern.as_slice()), r);
        }

        if let Pattern::Is(Look::Sym(c)) = t.pattern[0] {
            if !spec.input_alphabet.contains(c) || spec.mode == Mode::Post {
                v.push(Violation::AlphabetLeak {
                    rule: r,
                    detail: format!("input pattern {c:?} outside input alphabet"),
                });
            }
        }
        if t.action.consume && spec.mode == Mode::Post {
            v.push(Violation::InputReadInPostMode { rule: r });
        }
        if let Some(c) = t.action.emit {
            if !spec.output_alphabet.contains(c) {
                v.push(Violation::AlphabetLeak {
                    rule: r,
                    detail: format!("emitted {c:?} outside output alphabet"),
                });
            }
        }

        if t.action.storage.len() != spec.storages.len() {
            v.push(Violation::ActionShape {
                rule: r,
                storage: t.action.storage.len(),
                detail: format!("expected {} storage actions", spec.storages.len()),
            });
            continue;
        }
        let mut col = 1;
        for (si, (st, act)) in spec.storages.iter().zip(&t.action.storage).enumerate() {
            for p in &t.pattern[col..col + st.width()] {
                match (st.kind, p) {
                    (_, Pattern::Any) => {}
                    (StorageKind::Tape, Pattern::Is(Look::Empty)) => v.push(Violation::AlphabetLeak {
                        rule: r,
                        detail: format!("tape {} cannot be observed empty", st.id),
                    }),
                    (_, Pattern::Is(Look::Empty)) => {}
                    (_, Pattern::Is(Look::Sym(c))) if !st.admits(*c) => {
                        v.push(Violation::AlphabetLeak {
                            rule: r,
                            detail: format!("pattern {c:?} outside alphabet of {}", st.id),
                        })
                    }
                    _ => {}
                }
            }
            col += st.width();
            match (st.kind, act) {
                (_, StorageAction::Idle) => {}
                (StorageKind::Queue | StorageKind::Pushdown, StorageAction::Buffer { push, .. }) => {
                    if let Some(c) = push {
                        if !st.alphabet.contains(*c) {
                            v.push(Violation::AlphabetLeak {
                                rule: r,
                                detail: format!("pushes {c:?} outside alphabet of {}", st.id),
                            });
                        }
                    }
                }
                (StorageKind::Tape, StorageAction::Head { write, .. }) => {
                    if write.len() != st.tracks {
                        v.push(Violation::ActionShape {
                            rule: r,
                            storage: si,
                            detail: format!("write has {} tracks, tape has {}", write.len(), st.tracks),
                        });
                    }
                    for c in write.iter().flatten() {
                        if !st.admits(*c) {
                            v.push(Violation::AlphabetLeak {
                                rule: r,
                                detail: format!("writes {c:?} outside alphabet of {}", st.id),
                            });
                        }
                    }
                }
                (kind, _) => v.push(Violation::ActionShape {
                    rule: r,
                    storage: si,
                    detail: format!("action does not fit a {}", kind.name()),
                }),
            }
        }
    }

    // Reachability over the transition graph.
    let mut reached = BTreeSet::new();
    let mut frontier = VecDeque::from([spec.start.as_str()]);
    while let Some(s) = frontier.pop_front() {
        if !reached.insert(s) {
            continue;
        }
        for t in spec.transitions.iter().filter(|t| t.from == s) {
            frontier.push_back(t.action.next.as_str());
        }
    }
    for s in &spec.states {
        if !reached.contains(s.as_str()) {
            report.warnings.push(Warning::UnreachableState(s.clone()));
        }
    }
    report
}
