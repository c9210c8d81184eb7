//! Concrete machine constructions.

mod anbn;
mod fk;
pub mod lprime;

use thiserror::Error;

pub use anbn::{build_post_anbn, AnbnVariant};
pub use fk::{build_mk, build_tk};
pub use lprime::{
    build_lprime_acceptor, cycle_predictions, observed_cycle_lengths, observed_tail_steps, pi,
    pi_str, predicted_cycle_length, predicted_tail_steps, predicted_tail_steps_sum, prefix_steps,
    CyclePrediction, FormulaError, CYCLE_MARK_STATE, PREFIX_DELAY,
};

use crate::machine::MachineSpec;

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: &[&str] = &["mk:<k>", "tk:<k>", "lprime", "anbn:linear", "anbn:quadratic"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown builtin machine {0:?}")]
pub struct UnknownBuiltin(pub String);

/// Looks up a builtin machine by name: `mk:<k>`, `tk:<k>`, `lprime`,
/// `anbn:linear` or `anbn:quadratic`.
pub fn builtin(name: &str) -> Result<MachineSpec, UnknownBuiltin> {
    let unknown = || UnknownBuiltin(name.to_string());
    let parse_k = |k: &str| k.parse::<usize>().ok().filter(|&k| k >= 1).ok_or_else(unknown);
    match name.split_once(':') {
        Some(("mk", k)) => Ok(build_mk(parse_k(k)?)),
        Some(("tk", k)) => Ok(build_tk(parse_k(k)?)),
        Some(("anbn", "linear")) => Ok(build_post_anbn(AnbnVariant::Linear)),
        Some(("anbn", "quadratic")) => Ok(build_post_anbn(AnbnVariant::Quadratic)),
        None if name == "lprime" => Ok(build_lprime_acceptor()),
        _ => Err(unknown()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::{dump_spec, parse_spec};

    #[test]
    fn builtins_resolve() {
        for name in ["mk:1", "mk:3", "tk:2", "lprime", "anbn:linear", "anbn:quadratic"] {
            assert!(builtin(name).is_ok(), "{name}");
        }
        for name in ["mk:0", "mk:x", "tk", "anbn:cubic", "lprime:2", ""] {
            assert_eq!(builtin(name), Err(UnknownBuiltin(name.into())));
        }
    }

    #[test]
    fn builtins_survive_text_round_trip() {
        for name in ["mk:1", "mk:3", "tk:1", "tk:3", "lprime", "anbn:linear", "anbn:quadratic"] {
            let spec = builtin(name).unwrap();
            let text = dump_spec(&spec);
            assert_eq!(parse_spec(&text).unwrap(), spec, "{name}");
        }
    }
}
