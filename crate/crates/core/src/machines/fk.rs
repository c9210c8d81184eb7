//! Machines computing the round-interleaving function `F_k`.
//!
//! Inputs have the shape `x_1 # x_2 # … # x_k $ r_1 $ r_2 $ … r_m $` where
//! every `x_i` is a nonempty bit string and every row `r_j` has exactly `k`
//! bits. Before the first `$` nothing is emitted. In round `j` the `i`-th bit
//! of `r_j` is appended to stream `i` while the front of stream `i` is
//! emitted, and each `$` is copied to the output.
//!
//! [`build_mk`] keeps the streams on `k` queues and runs in real time.
//! [`build_tk`] keeps them on the `k` tracks of one tape and uses a pushdown
//! to relocate a track's freshly written segment whenever the head runs off
//! the end of that track's stored string.

use std::collections::BTreeSet;

use crate::machine::{
    Acceptance, Action, MachineSpec, Pattern, Shift, SpecBuilder, StorageAction, StorageSpec,
};

const BITS: [char; 2] = ['0', '1'];

/// Tape symbol marking a bit written during the current rounds.
fn fresh(bit: char) -> char {
    match bit {
        '0' => 'z',
        '1' => 'o',
        _ => unreachable!("not a bit: {bit}"),
    }
}

const ERASED: char = '.';
const LEFT_END: char = '<';
const BLANK: char = crate::machine::BLANK;

fn seg_first(i: usize) -> String {
    format!("seg{i}_first")
}

fn seg(i: usize) -> String {
    format!("seg{i}")
}

fn out(i: usize) -> String {
    format!("out{i}")
}

/// State reading the bit of stream `i` (1-based); after the last stream the
/// machine expects `$`.
fn after_out(i: usize, k: usize) -> String {
    if i == k {
        "dollar".into()
    } else {
        out(i + 1)
    }
}

fn finals() -> Acceptance {
    Acceptance::FinalStates(BTreeSet::from([out(1)]))
}

/// `k`-queue machine; one step per input symbol.
pub fn build_mk(k: usize) -> MachineSpec {
    assert!(k >= 1, "k must be positive");
    let mut b = SpecBuilder::new(format!("mk:{k}"), seg_first(1))
        .input_alphabet("01#$")
        .output_alphabet("01$")
        .acceptance(finals());
    for i in 1..=k {
        b = b.storage(StorageSpec::queue(format!("q{i}"), "01"));
    }
    let width = 1 + k;
    let only = |i: usize, act: StorageAction| -> Vec<StorageAction> {
        (1..=k).map(|j| if j == i { act.clone() } else { StorageAction::Idle }).collect()
    };
    let input = |c: char| {
        let mut p = vec![Pattern::Any; width];
        p[0] = Pattern::sym(c);
        p
    };

    for i in 1..=k {
        for bit in BITS {
            for from in [seg_first(i), seg(i)] {
                b.rule(
                    &from,
                    input(bit),
                    Action { consume: true, storage: only(i, StorageAction::push(bit)), emit: None, next: seg(i) },
                );
            }
        }
        let (sep, next) = if i < k { ('#', seg_first(i + 1)) } else { ('$', "first_round".to_string()) };
        b.rule(&seg(i), input(sep), Action { consume: true, storage: only(0, StorageAction::Idle), emit: None, next });
    }

    for i in 1..=k {
        let sources = if i == 1 { vec![out(1), "first_round".to_string()] } else { vec![out(i)] };
        for from in sources {
            for bit in BITS {
                for front in BITS {
                    let mut p = input(bit);
                    p[i] = Pattern::sym(front);
                    b.rule(
                        &from,
                        p,
                        Action {
                            consume: true,
                            storage: only(i, StorageAction::pop_push(bit)),
                            emit: Some(front),
                            next: after_out(i, k),
                        },
                    );
                }
            }
        }
    }
    b.rule("dollar", input('$'), Action { consume: true, storage: only(0, StorageAction::Idle), emit: Some('$'), next: out(1) });
    b.finish()
}

/// One tape with `k` tracks plus one pushdown.
///
/// Track `i` holds stream `i` starting at cell 1 (cell 0 carries a left-end
/// marker). During the rounds the head advances one cell per round; the
/// symbol under the head on track `i` is emitted and overwritten by the
/// incoming bit, marked fresh. When track `i` is blank under the head its
/// stored string has been used up: the machine walks left over the fresh
/// cells, pushing them and erasing them, walks right to the blank cell,
/// pops the pushdown onto the following cells as ordinary bits, and walks
/// back to where it left off.
pub fn build_tk(k: usize) -> MachineSpec {
    assert!(k >= 1, "k must be positive");
    let track_alphabet: String = ['0', '1', 'z', 'o', ERASED, LEFT_END].iter().collect();
    let mut b = SpecBuilder::new(format!("tk:{k}"), "init")
        .input_alphabet("01#$")
        .output_alphabet("01$")
        .storage(StorageSpec::tape("t", track_alphabet.as_str(), k))
        .storage(StorageSpec::pushdown("p", "01"))
        .acceptance(finals());

    // Pattern layout: input, k tracks, pushdown top.
    let width = k + 2;
    let pd = k + 1;
    let obs = |input: Pattern, track: Option<(usize, char)>, top: Pattern| {
        let mut p = vec![Pattern::Any; width];
        p[0] = input;
        if let Some((i, c)) = track {
            p[i] = Pattern::sym(c);
        }
        p[pd] = top;
        p
    };
    let head = |track: Option<(usize, char)>, shift: Shift| {
        let mut write = vec![None; k];
        if let Some((i, c)) = track {
            write[i - 1] = Some(c);
        }
        StorageAction::Head { write, shift }
    };
    let step = |consume: bool, tape: StorageAction, pd: StorageAction, emit: Option<char>, next: String| Action {
        consume,
        storage: vec![tape, pd],
        emit,
        next,
    };
    let any = Pattern::Any;
    let idle = StorageAction::Idle;

    b.rule(
        "init",
        obs(any, None, any),
        step(false, StorageAction::Head { write: vec![Some(LEFT_END); k], shift: Shift::Right }, idle.clone(), None, seg_first(1)),
    );

    // Segment phase: write x_i onto track i from cell 1, then rewind.
    for i in 1..=k {
        for bit in BITS {
            for from in [seg_first(i), seg(i)] {
                b.rule(
                    &from,
                    obs(Pattern::sym(bit), None, any),
                    step(true, head(Some((i, bit)), Shift::Right), idle.clone(), None, seg(i)),
                );
            }
        }
        let rewind = format!("rewind{i}");
        let (sep, next) = if i < k { ('#', seg_first(i + 1)) } else { ('$', "first_round".to_string()) };
        b.rule(&seg(i), obs(Pattern::sym(sep), None, any), step(true, head(None, Shift::Left), idle.clone(), None, rewind.clone()));
        for bit in BITS {
            b.rule(&rewind, obs(any, Some((i, bit)), any), step(false, head(None, Shift::Left), idle.clone(), None, rewind.clone()));
        }
        b.rule(&rewind, obs(any, Some((i, LEFT_END)), any), step(false, head(None, Shift::Right), idle.clone(), None, next));
    }

    // Rounds.
    for i in 1..=k {
        let sources = if i == 1 { vec![out(1), "first_round".to_string()] } else { vec![out(i)] };
        for from in &sources {
            for bit in BITS {
                for stored in BITS {
                    b.rule(
                        from,
                        obs(Pattern::sym(bit), Some((i, stored)), any),
                        step(true, head(Some((i, fresh(bit))), Shift::Stay), idle.clone(), Some(stored), after_out(i, k)),
                    );
                }
            }
        }

        // Relocation of track i, entered when the track is blank under the head.
        let (gather, put, back) = (format!("gather{i}"), format!("put{i}"), format!("back{i}"));
        b.rule(&out(i), obs(any, Some((i, BLANK)), any), step(false, head(None, Shift::Left), idle.clone(), None, gather.clone()));
        for bit in BITS {
            b.rule(
                &gather,
                obs(any, Some((i, fresh(bit))), any),
                step(false, head(Some((i, ERASED)), Shift::Left), StorageAction::push(bit), None, gather.clone()),
            );
        }
        for stop in [ERASED, LEFT_END] {
            b.rule(&gather, obs(any, Some((i, stop)), any), step(false, head(None, Shift::Right), idle.clone(), None, put.clone()));
        }
        b.rule(&put, obs(any, Some((i, ERASED)), any), step(false, head(None, Shift::Right), idle.clone(), None, put.clone()));
        for bit in BITS {
            b.rule(
                &put,
                obs(any, Some((i, BLANK)), Pattern::sym(bit)),
                step(false, head(Some((i, bit)), Shift::Right), StorageAction::pop(), None, put.clone()),
            );
        }
        b.rule(&put, obs(any, Some((i, BLANK)), Pattern::EMPTY), step(false, head(None, Shift::Left), idle.clone(), None, back.clone()));
        for bit in BITS {
            b.rule(&back, obs(any, Some((i, bit)), any), step(false, head(None, Shift::Left), idle.clone(), None, back.clone()));
        }
        b.rule(&back, obs(any, Some((i, ERASED)), any), step(false, head(None, Shift::Right), idle.clone(), None, out(i)));
    }
    b.rule(
        "dollar",
        obs(Pattern::sym('$'), None, any),
        step(true, head(None, Shift::Right), idle, Some('$'), out(1)),
    );
    b.finish()
}
