//! Post-mode acceptors for `{ aⁿbⁿ : n ≥ 0 }`.
//!
//! Both start by appending an end marker `#` to the preloaded queue. The
//! quadratic variant deletes one leading `a` and the last `b` per full
//! rotation. The linear variant runs halving passes: each pass deletes the
//! `a`s and `b`s at odd positions of their blocks and checks that both
//! blocks had the same parity, so pass lengths shrink geometrically.

use crate::machine::{Acceptance, Action, MachineSpec, Mode, Pattern, SpecBuilder, StorageAction, StorageSpec};

const MARK: char = '#';

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AnbnVariant {
    Linear,
    Quadratic,
}

impl AnbnVariant {
    pub fn name(self) -> &'static str {
        match self {
            AnbnVariant::Linear => "linear",
            AnbnVariant::Quadratic => "quadratic",
        }
    }
}

fn front(c: char) -> Vec<Pattern> {
    vec![Pattern::Any, Pattern::sym(c)]
}

fn act(queue: StorageAction, next: impl Into<String>) -> Action {
    Action { consume: false, storage: vec![queue], emit: None, next: next.into() }
}

/// Cycles the front symbol to the back.
fn keep(c: char) -> StorageAction {
    StorageAction::pop_push(c)
}

pub fn build_post_anbn(variant: AnbnVariant) -> MachineSpec {
    let mut b = SpecBuilder::new(format!("anbn:{}", variant.name()), "init")
        .input_alphabet("ab")
        .storage(StorageSpec::queue("q", "ab#"))
        .acceptance(Acceptance::EmptyAllStorages)
        .mode(Mode::Post)
        .epsilon_accept(true);
    b.rule("init", vec![Pattern::Any, Pattern::Any], act(StorageAction::push(MARK), "start"));
    b.rule("start", front(MARK), act(StorageAction::pop(), "done"));
    b.state("done");

    match variant {
        AnbnVariant::Quadratic => {
            b.rule("start", front('a'), act(StorageAction::pop(), "skip_a"));
            b.rule("skip_a", front('a'), act(keep('a'), "skip_a"));
            // The first b is held in the finite control instead of re-queued;
            // each later b re-queues the held one, so the last b is dropped.
            b.rule("skip_a", front('b'), act(StorageAction::pop(), "hold"));
            b.rule("hold", front('b'), act(keep('b'), "hold"));
            b.rule("hold", front(MARK), act(keep(MARK), "start"));
        }
        AnbnVariant::Linear => {
            // a0/a1: parity of a's seen this pass; the next a is deleted when
            // the parity is even. b<pa><pb> likewise for b's.
            for from in ["start", "a0"] {
                b.rule(from, front('a'), act(StorageAction::pop(), "a1"));
                b.rule(from, front('b'), act(StorageAction::pop(), "b01"));
            }
            b.rule("a0", front(MARK), act(keep(MARK), "start"));
            b.rule("a1", front('a'), act(keep('a'), "a0"));
            b.rule("a1", front('b'), act(StorageAction::pop(), "b11"));
            for pa in 0..2 {
                let even = format!("b{pa}0");
                let odd = format!("b{pa}1");
                b.rule(&even, front('b'), act(StorageAction::pop(), odd.clone()));
                b.rule(&odd, front('b'), act(keep('b'), even.clone()));
                let matched = if pa == 0 { &even } else { &odd };
                b.rule(matched, front(MARK), act(keep(MARK), "start"));
            }
        }
    }
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::{validate_spec, Machine, RunLimits};

    fn accepts(v: AnbnVariant, w: &str) -> bool {
        Machine::new(build_post_anbn(v)).unwrap().run_str(w, RunLimits::default()).unwrap().accepted()
    }

    #[test]
    fn both_variants_validate() {
        for v in [AnbnVariant::Linear, AnbnVariant::Quadratic] {
            let r = validate_spec(&build_post_anbn(v));
            assert!(r.is_executable() && r.warnings.is_empty(), "{r}");
        }
    }

    #[test]
    fn small_words() {
        for v in [AnbnVariant::Linear, AnbnVariant::Quadratic] {
            assert!(accepts(v, "aabb"));
            assert!(accepts(v, ""));
            assert!(accepts(v, "ab"));
            assert!(!accepts(v, "aab"));
            assert!(!accepts(v, "abab"));
            assert!(!accepts(v, "ba"));
            assert!(!accepts(v, "b"));
        }
    }
}
