//! Line-oriented text format for machine specs.
//!
//! ```text
//! # comment
//! name: copy
//! states: q
//! start: q
//! input_alphabet: ab
//! output_alphabet:
//! storage: q1 queue ab
//! storage: t tape 01 tracks=2
//! acceptance: empty_all_storages
//! mode: online
//! epsilon_accept: false
//! q | a | *,** -> q | y | push=a,write=1*/move=R | -
//! ```
//!
//! Transition lines read `<state> | <input> | <observations> -> <next> |
//! <consume> | <actions> | <emit>`. The input is a symbol, `-` (end of
//! input) or `*`. Observations and actions are comma-separated, one per
//! storage. A queue or pushdown shows a symbol, `empty` or `*`; a tape shows
//! one character per track (`*` per track or for the whole vector, `_` for
//! blank). Buffer actions are `pop`, `push=<s>`, `pop+push=<s>` or `-`; tape
//! actions are `write=<per-track symbols or *>/move=<L|S|R>`, `move=<m>` or
//! `-`. Acceptance is `empty_all_storages`, `final_states <s>...` or
//! `output_bit`; mode is `online` or `post`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use super::spec::{
    Acceptance, Action, Alphabet, Look, MachineSpec, Mode, Pattern, Shift, StorageAction,
    StorageKind, StorageSpec, Transition,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

fn single(line: usize, tok: &str) -> Result<char, ParseError> {
    let mut it = tok.chars();
    match (it.next(), it.next()) {
        (Some(c), None) => Ok(c),
        _ => err(line, format!("expected a single symbol, found {tok:?}")),
    }
}

pub fn parse_spec(text: &str) -> Result<MachineSpec, ParseError> {
    let mut name = String::from("unnamed");
    let mut states: Option<Vec<String>> = None;
    let mut start: Option<String> = None;
    let mut input_alphabet = Alphabet::new();
    let mut output_alphabet = Alphabet::new();
    let mut storages = Vec::new();
    let mut acceptance = Acceptance::EmptyAllStorages;
    let mut mode = Mode::Online;
    let mut epsilon_accept = false;
    let mut rows: Vec<(usize, &str)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.contains("->") {
            rows.push((n, line));
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            return err(n, format!("unrecognised line {line:?}"));
        };
        let value = value.trim();
        match key.trim() {
            "name" => name = value.to_string(),
            "states" => states = Some(value.split_whitespace().map(str::to_string).collect()),
            "start" => start = Some(value.to_string()),
            "input_alphabet" => input_alphabet = Alphabet::from(value),
            "output_alphabet" => output_alphabet = Alphabet::from(value),
            "storage" => {
                let parts: Vec<&str> = value.split_whitespace().collect();
                let (id, kind, alphabet, rest) = match parts.as_slice() {
                    [id, kind, alphabet, rest @ ..] => (*id, *kind, *alphabet, rest),
                    _ => return err(n, "storage needs <id> <kind> <alphabet>"),
                };
                let kind = match kind {
                    "queue" => StorageKind::Queue,
                    "pushdown" => StorageKind::Pushdown,
                    "tape" => StorageKind::Tape,
                    other => return err(n, format!("unknown storage kind {other:?}")),
                };
                let tracks = match rest {
                    [] => 1,
                    [t] => match t.strip_prefix("tracks=").map(str::parse::<usize>) {
                        Some(Ok(t)) => t,
                        _ => return err(n, format!("bad track count {t:?}")),
                    },
                    _ => return err(n, "trailing tokens after storage"),
                };
                storages.push(StorageSpec { id: id.to_string(), kind, alphabet: Alphabet::from(alphabet), tracks });
            }
            "acceptance" => {
                let mut words = value.split_whitespace();
                acceptance = match words.next() {
                    Some("empty_all_storages") => Acceptance::EmptyAllStorages,
                    Some("output_bit") => Acceptance::OutputBit,
                    Some("final_states") => Acceptance::FinalStates(words.map(str::to_string).collect()),
                    _ => return err(n, format!("unknown acceptance mode {value:?}")),
                };
            }
            "mode" => {
                mode = match value {
                    "online" => Mode::Online,
                    "post" => Mode::Post,
                    other => return err(n, format!("unknown mode {other:?}")),
                }
            }
            "epsilon_accept" => {
                epsilon_accept = match value {
                    "true" => true,
                    "false" => false,
                    other => return err(n, format!("expected true or false, found {other:?}")),
                }
            }
            other => return err(n, format!("unknown header {other:?}")),
        }
    }

    let Some(start) = start else {
        return err(0, "missing start state");
    };
    let mut transitions = Vec::with_capacity(rows.len());
    for (n, row) in rows {
        transitions.push(parse_transition(n, row, &storages)?);
    }
    let states = states.unwrap_or_else(|| {
        let mut seen = BTreeSet::new();
        std::iter::once(start.clone())
            .chain(transitions.iter().flat_map(|t| [t.from.clone(), t.action.next.clone()]))
            .filter(|s| seen.insert(s.clone()))
            .collect()
    });
    Ok(MachineSpec {
        name,
        states,
        start,
        input_alphabet,
        output_alphabet,
        storages,
        transitions,
        acceptance,
        mode,
        epsilon_accept,
    })
}

fn parse_transition(n: usize, row: &str, storages: &[StorageSpec]) -> Result<Transition, ParseError> {
    let (lhs, rhs) = row.split_once("->").expect("caller checked");
    let lhs: Vec<&str> = lhs.split('|').map(str::trim).collect();
    let rhs: Vec<&str> = rhs.split('|').map(str::trim).collect();
    let ([from, input, obs], [next, consume, actions, emit]) = (lhs.as_slice(), rhs.as_slice()) else {
        return err(n, "expected `state | input | obs -> next | consume | actions | emit`");
    };

    let mut pattern = vec![match *input {
        "*" => Pattern::Any,
        "-" => Pattern::EMPTY,
        s => Pattern::sym(single(n, s)?),
    }];
    let obs = split_list(obs);
    if obs.len() != storages.len() {
        return err(n, format!("{} observations for {} storages", obs.len(), storages.len()));
    }
    for (tok, st) in obs.iter().zip(storages) {
        match st.kind {
            StorageKind::Tape if *tok == "*" => pattern.extend(std::iter::repeat_n(Pattern::Any, st.tracks)),
            StorageKind::Tape => {
                if tok.chars().count() != st.tracks {
                    return err(n, format!("tape {} observation {tok:?} needs {} tracks", st.id, st.tracks));
                }
                pattern.extend(tok.chars().map(|c| if c == '*' { Pattern::Any } else { Pattern::sym(c) }));
            }
            _ => pattern.push(match *tok {
                "*" => Pattern::Any,
                "empty" => Pattern::EMPTY,
                s => Pattern::sym(single(n, s)?),
            }),
        }
    }

    let consume = match *consume {
        "y" => true,
        "n" => false,
        other => return err(n, format!("consume must be y or n, found {other:?}")),
    };
    let actions = split_list(actions);
    if actions.len() != storages.len() {
        return err(n, format!("{} actions for {} storages", actions.len(), storages.len()));
    }
    let storage = actions
        .iter()
        .zip(storages)
        .map(|(tok, st)| parse_action(n, tok, st))
        .collect::<Result<Vec<_>, _>>()?;
    let emit = match *emit {
        "-" => None,
        s => Some(single(n, s)?),
    };
    Ok(Transition {
        from: from.to_string(),
        pattern,
        action: Action { consume, storage, emit, next: next.to_string() },
    })
}

fn split_list(s: &str) -> Vec<&str> {
    if s.is_empty() {
        Vec::new()
    } else {
        s.split(',').map(str::trim).collect()
    }
}

fn parse_action(n: usize, tok: &str, st: &StorageSpec) -> Result<StorageAction, ParseError> {
    if tok == "-" {
        return Ok(StorageAction::Idle);
    }
    match st.kind {
        StorageKind::Queue | StorageKind::Pushdown => {
            if tok == "pop" {
                Ok(StorageAction::pop())
            } else if let Some(s) = tok.strip_prefix("pop+push=") {
                Ok(StorageAction::pop_push(single(n, s)?))
            } else if let Some(s) = tok.strip_prefix("push=") {
                Ok(StorageAction::push(single(n, s)?))
            } else {
                err(n, format!("bad {} action {tok:?}", st.kind.name()))
            }
        }
        StorageKind::Tape => {
            let (write, mv) = match tok.split_once('/') {
                Some((w, m)) => (Some(w), m),
                None if tok.starts_with("move=") => (None, tok),
                None => (Some(tok), "move=S"),
            };
            let write = match write {
                None => vec![None; st.tracks],
                Some(w) => {
                    let Some(w) = w.strip_prefix("write=") else {
                        return err(n, format!("bad tape action {tok:?}"));
                    };
                    if w.chars().count() != st.tracks {
                        return err(n, format!("write {w:?} needs {} tracks", st.tracks));
                    }
                    w.chars().map(|c| (c != '*').then_some(c)).collect()
                }
            };
            let shift = match mv {
                "move=L" => Shift::Left,
                "move=S" => Shift::Stay,
                "move=R" => Shift::Right,
                other => return err(n, format!("bad head move {other:?}")),
            };
            Ok(StorageAction::Head { write, shift })
        }
    }
}

fn look(p: Pattern, empty: &str) -> String {
    match p {
        Pattern::Any => "*".into(),
        Pattern::Is(Look::Empty) => empty.into(),
        Pattern::Is(Look::Sym(c)) => c.to_string(),
    }
}

/// Renders `spec` in the text format; [`parse_spec`] reads it back unchanged.
pub fn dump_spec(spec: &MachineSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "name: {}", spec.name);
    let _ = writeln!(out, "states: {}", spec.states.join(" "));
    let _ = writeln!(out, "start: {}", spec.start);
    let _ = writeln!(out, "input_alphabet: {}", spec.input_alphabet);
    let _ = writeln!(out, "output_alphabet: {}", spec.output_alphabet);
    for st in &spec.storages {
        let _ = write!(out, "storage: {} {} {}", st.id, st.kind.name(), st.alphabet);
        if st.kind == StorageKind::Tape {
            let _ = write!(out, " tracks={}", st.tracks);
        }
        out.push('\n');
    }
    let acceptance = match &spec.acceptance {
        Acceptance::EmptyAllStorages => "empty_all_storages".to_string(),
        Acceptance::OutputBit => "output_bit".to_string(),
        Acceptance::FinalStates(f) => {
            let names: Vec<&str> = f.iter().map(String::as_str).collect();
            format!("final_states {}", names.join(" "))
        }
    };
    let _ = writeln!(out, "acceptance: {}", acceptance.trim_end());
    let _ = writeln!(out, "mode: {}", if spec.mode == Mode::Post { "post" } else { "online" });
    let _ = writeln!(out, "epsilon_accept: {}", spec.epsilon_accept);
    for t in &spec.transitions {
        let mut obs = Vec::new();
        let mut col = 1;
        for st in &spec.storages {
            let w = st.width();
            let part = &t.pattern[col..col + w];
            col += w;
            obs.push(match st.kind {
                StorageKind::Tape if part.iter().all(|p| *p == Pattern::Any) => "*".to_string(),
                StorageKind::Tape => part.iter().map(|p| look(*p, "_")).collect(),
                _ => look(part[0], "empty"),
            });
        }
        let actions: Vec<String> = t
            .action
            .storage
            .iter()
            .map(|a| match a {
                StorageAction::Idle | StorageAction::Buffer { pop: false, push: None } => "-".into(),
                StorageAction::Buffer { pop: true, push: None } => "pop".into(),
                StorageAction::Buffer { pop: false, push: Some(c) } => format!("push={c}"),
                StorageAction::Buffer { pop: true, push: Some(c) } => format!("pop+push={c}"),
                StorageAction::Head { write, shift } => {
                    let m = match shift {
                        Shift::Left => 'L',
                        Shift::Stay => 'S',
                        Shift::Right => 'R',
                    };
                    let w: String = write.iter().map(|c| c.unwrap_or('*')).collect();
                    format!("write={w}/move={m}")
                }
            })
            .collect();
        let _ = writeln!(
            out,
            "{} | {} | {} -> {} | {} | {} | {}",
            t.from,
            look(t.pattern[0], "-"),
            obs.join(","),
            t.action.next,
            if t.action.consume { 'y' } else { 'n' },
            actions.join(","),
            t.action.emit.map_or("-".to_string(), |c| c.to_string()),
        );
    }
    out
}
