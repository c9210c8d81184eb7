//! Step-count series over growing inputs for the builtin machines.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::growth::{fit_growth, GrowthError, GrowthReport};
use super::report::csv_field;
use crate::machine::{Machine, RunLimits};
use crate::machines::{builtin, UnknownBuiltin};
use crate::oracles::{case_seed, gen_lk_sized, gen_lprime};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BenchError {
    #[error(transparent)]
    Unknown(#[from] UnknownBuiltin),
    #[error("{machine}: no input of size {n} ({reason})")]
    Size { machine: String, n: usize, reason: String },
    #[error(transparent)]
    Growth(#[from] GrowthError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BenchRow {
    pub n: u64,
    pub steps: u64,
    pub max_len: usize,
    pub verdict: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchReport {
    pub machine: String,
    pub seed: u64,
    pub rows: Vec<BenchRow>,
    pub growth: GrowthReport,
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,steps,max_len,verdict\n");
        for r in &self.rows {
            s.push_str(&format!("{},{},{},{}\n", r.n, r.steps, r.max_len, csv_field(&r.verdict)));
        }
        s
    }
}

/// Powers of two from `2^8` to `2^16`.
pub fn default_bench_sizes() -> Vec<usize> {
    (8..=16).map(|j| 1 << j).collect()
}

/// A member input of about `n` symbols for a builtin machine name.
///
/// `lprime` needs `n = 2^(k+1)` and yields a member with `|v| = k`
/// (`n + 2k + 1` symbols); `mk:<k>` and `tk:<k>` get a seeded `L_k`
/// instance of roughly `n` symbols; `anbn:*` needs even `n`.
pub fn bench_input(machine: &str, n: usize, seed: u64) -> Result<String, BenchError> {
    builtin(machine)?;
    let size_err = |reason: &str| BenchError::Size { machine: machine.into(), n, reason: reason.into() };
    match machine.split_once(':') {
        None => {
            if n < 2 || !n.is_power_of_two() {
                return Err(size_err("needs a power of two ≥ 2"));
            }
            let k = n.trailing_zeros() as usize - 1;
            Ok(gen_lprime(k, seed).map_err(|e| size_err(&e.to_string()))?.rendered)
        }
        Some(("mk" | "tk", k)) => {
            let k: usize = k.parse().expect("validated by builtin");
            if n < 2 * (k + 1) {
                return Err(size_err("too small for one prefix and one row"));
            }
            Ok(gen_lk_sized(k, n, seed).map_err(|e| size_err(&e.to_string()))?.render())
        }
        _ => {
            if n % 2 == 1 {
                return Err(size_err("needs an even length"));
            }
            Ok(format!("{}{}", "a".repeat(n / 2), "b".repeat(n / 2)))
        }
    }
}

/// Runs the machine on one input per size and fits the growth of steps
/// against actual input length.
pub fn bench_series(machine: &str, sizes: &[usize], seed: u64) -> Result<BenchReport, BenchError> {
    let m = Machine::new(builtin(machine)?).expect("builtins are valid");
    let inputs: Vec<String> = sizes
        .iter()
        .map(|&n| bench_input(machine, n, case_seed(seed, n as u64)))
        .collect::<Result<_, _>>()?;
    let mut rows: Vec<BenchRow> = inputs
        .par_iter()
        .map(|w| {
            let r = m.run_str(w, RunLimits::default()).expect("generated input is in the alphabet");
            BenchRow { n: w.chars().count() as u64, steps: r.steps, max_len: r.max_storage_len, verdict: r.verdict.name().into() }
        })
        .collect();
    rows.sort_by_key(|r| r.n);
    let growth = fit_growth(&rows.iter().map(|r| (r.n, r.steps)).collect::<Vec<_>>())?;
    Ok(BenchReport { machine: machine.to_string(), seed, rows, growth })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::GrowthVerdict;
    use crate::oracles::{in_anbn, in_lprime, reference_fk};

    #[test]
    fn inputs_are_members() {
        assert!(in_lprime(&bench_input("lprime", 16, 1).unwrap()));
        assert!(in_anbn(&bench_input("anbn:linear", 16, 1).unwrap()));
        assert!(reference_fk(2, &bench_input("tk:2", 64, 1).unwrap()).is_ok());
        assert!(bench_input("lprime", 24, 1).is_err());
        assert!(bench_input("anbn:linear", 7, 1).is_err());
        assert!(bench_input("mk:3", 4, 1).is_err());
        assert!(matches!(bench_input("qk:1", 16, 1), Err(BenchError::Unknown(_))));
    }

    #[test]
    fn small_series_are_linear_and_stable() {
        let sizes: Vec<usize> = (5..=10).map(|j| 1 << j).collect();
        for name in ["lprime", "mk:2", "tk:2", "anbn:linear"] {
            let a = bench_series(name, &sizes, 3).unwrap();
            assert!(a.rows.iter().all(|r| r.verdict == "accept"), "{name}");
            assert_eq!(a.growth.verdict, GrowthVerdict::Linear, "{name}: {}", a.growth.summary());
            assert_eq!(a.to_csv(), bench_series(name, &sizes, 3).unwrap().to_csv());
        }
        let q = bench_series("anbn:quadratic", &sizes, 3).unwrap();
        assert_eq!(q.growth.verdict, GrowthVerdict::NotLinear);
    }
}
