//! End-to-end acceptance checks, one line per criterion.

use std::process::{Command, ExitCode};
use std::time::Instant;

use qmlab_core::harness::{
    anbn_growth_sizes, bench_series, default_bench_sizes, fit_growth, verify, GrowthVerdict, Suite, VerifyOptions,
    LINEAR_MAX_SLOPE, LINEAR_MAX_SPREAD, QUADRATIC_MIN_SLOPE,
};
use qmlab_core::machine::check_bounded_delay;
use qmlab_core::machines::{
    build_lprime_acceptor, build_mk, build_post_anbn, build_tk, observed_cycle_lengths, pi,
    predicted_cycle_length, predicted_tail_steps, AnbnVariant, PREFIX_DELAY,
};
use qmlab_core::oracles::{case_seed, gen_lk, gen_lprime, in_anbn, pi_oracle, reference_fk, InstanceRng, LprimeInstance};
use qmlab_core::{Machine, RunLimits, RunResult, Trace};

const K_MAX: usize = 10;
const MEMBERS_PER_K: u64 = 200;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn lprime_member_runs() -> Vec<(LprimeInstance, RunResult)> {
    let m = Machine::new(build_lprime_acceptor()).unwrap();
    (0..=K_MAX)
        .flat_map(|k| (0..MEMBERS_PER_K).map(move |i| (k, case_seed(1000 + k as u64, i))))
        .map(|(k, seed)| {
            let inst = gen_lprime(k, seed).unwrap();
            let r = m.run_str(&inst.rendered, RunLimits::traced()).unwrap();
            (inst, r)
        })
        .collect()
}

/// Number of steps up to and including the consumption of the `w v c v` prefix.
fn prefix_region(trace: &Trace, prefix_len: usize) -> usize {
    let mut read = 0;
    for (i, r) in trace.records().iter().enumerate() {
        read += usize::from(r.consumed);
        if read == prefix_len {
            return i + 1;
        }
    }
    trace.steps()
}

fn criterion_1(runs: &[(LprimeInstance, RunResult)]) -> Outcome {
    for (inst, r) in runs {
        let k = inst.k() as u64;
        let predicted: Vec<u64> = (1..=k + 1).map(|i| predicted_cycle_length(k, i).unwrap()).collect();
        let observed: Vec<u64> =
            observed_cycle_lengths(r.trace.as_ref().unwrap()).iter().map(|&x| x as u64).collect();
        if observed != predicted || !r.accepted() {
            return Err(format!("k={k} word={} predicted {predicted:?} observed {observed:?}", inst.rendered));
        }
    }
    Ok(format!("{} members, k=0..{K_MAX}, every cycle-start length exact", runs.len()))
}

fn criterion_2(runs: &[(LprimeInstance, RunResult)]) -> Outcome {
    let c0 = 0i64;
    for (inst, r) in runs {
        let k = inst.k() as u64;
        let tail = r.steps as i64 - prefix_region(r.trace.as_ref().unwrap(), inst.prefix_len()) as i64;
        let predicted = predicted_tail_steps(k).unwrap() as i64;
        if tail != predicted + c0 {
            return Err(format!("k={k}: tail {tail} vs predicted {predicted} + c0 {c0}"));
        }
    }
    Ok(format!("{} members, tail = 2 + 2^(k+1) - 1 + k^2 + 2k + 1 exactly, c0 = {c0}", runs.len()))
}

fn criterion_3() -> Outcome {
    let report = verify(&[Suite::Lprime], &VerifyOptions { seed: 3, ..Default::default() });
    if let Some(f) = report.failures().next() {
        return Err(f.to_string());
    }
    let count = |prefix: &str| -> u64 {
        report.checks.iter().filter(|c| c.case.starts_with(prefix)).map(|c| c.cases).sum()
    };
    let all = count("exhaustive-all/len13");
    let shaped = count("exhaustive-shape/len13");
    let per_clause: Vec<(String, u64)> = ["member", "v-mismatch", "w-not-pi", "bad-length", "bad-format"]
        .iter()
        .map(|c| (c.to_string(), count(&format!("structured/{c}/"))))
        .collect();
    if all == 0 || shaped == 0 || per_clause.iter().any(|(_, n)| *n < 10_000) {
        return Err(format!("coverage too small: all={all} shaped={shaped} {per_clause:?}"));
    }
    let clauses: Vec<String> = per_clause.iter().map(|(c, n)| format!("{c}={n}")).collect();
    Ok(format!("all words <=13: {all}, shape-plausible <=13: {shaped}, structured {}", clauses.join(" ")))
}

fn criterion_4() -> Outcome {
    let mut parts = Vec::new();
    for name in ["lprime", "mk:1", "mk:2", "mk:3", "tk:1", "tk:2", "tk:3"] {
        let b = bench_series(name, &default_bench_sizes(), 4).map_err(|e| e.to_string())?;
        let g = &b.growth;
        if g.verdict != GrowthVerdict::Linear || b.rows.iter().any(|r| r.verdict != "accept") {
            return Err(format!("{name}: {}", g.summary()));
        }
        parts.push(format!("{name} slope={:.3} spread={:.2}", g.fitted_exponent, g.spread()));
    }
    Ok(format!(
        "n=2^8..2^16, thresholds slope<={LINEAR_MAX_SLOPE} spread<={LINEAR_MAX_SPREAD}: {}",
        parts.join(", ")
    ))
}

fn criterion_5() -> Outcome {
    let mut total = 0;
    for k in 1..=3 {
        let mk = Machine::new(build_mk(k)).unwrap();
        let tk = Machine::new(build_tk(k)).unwrap();
        for i in 0..1000 {
            let seed = case_seed(5000 + k as u64, i);
            let mut rng = InstanceRng::new(seed);
            let f: Vec<usize> = (0..k).map(|_| 1 + rng.below(12)).collect();
            let m = 1 + rng.below(40);
            let word = gen_lk(k, &f, m, seed).unwrap().render();
            let want = reference_fk(k, &word).unwrap();
            let a = mk.run_str(&word, RunLimits::default()).unwrap();
            let b = tk.run_str(&word, RunLimits::default()).unwrap();
            if !(a.accepted() && b.accepted() && a.output == want && b.output == want) {
                return Err(format!("k={k} seed={seed} word={word} want={want} mk={} tk={}", a.output, b.output));
            }
            total += 1;
        }
    }
    Ok(format!("{total} instances (1000 per k=1,2,3), M_k = T_k = reference"))
}

fn criterion_6() -> Outcome {
    for k in 0..=12 {
        let idx: Vec<u32> = (1..=1u32 << k).collect();
        let p = pi(&idx);
        if p != pi_oracle(&idx).map_err(|e| e.to_string())? {
            return Err(format!("pi differs from the halving oracle at k={k}"));
        }
        let mut sorted = p.clone();
        sorted.sort_unstable();
        if sorted != idx {
            return Err(format!("pi is not a permutation at k={k}"));
        }
    }
    Ok("lengths 2^0..2^12: pi = pi_oracle, pi bijective".into())
}

fn criterion_7(runs: &[(LprimeInstance, RunResult)]) -> Outcome {
    if !(0..=4).contains(&PREFIX_DELAY) {
        return Err(format!("documented delay {PREFIX_DELAY} exceeds 4"));
    }
    for (inst, r) in runs {
        let t = r.trace.as_ref().unwrap();
        if !check_bounded_delay(t, 0..prefix_region(t, inst.prefix_len()), PREFIX_DELAY) {
            return Err(format!("k={} word={}", inst.k(), inst.rendered));
        }
    }
    Ok(format!("{} members k=0..{K_MAX}, prefix delay d={PREFIX_DELAY}", runs.len()))
}

fn criterion_8() -> Outcome {
    let mut notes = Vec::new();
    for variant in [AnbnVariant::Linear, AnbnVariant::Quadratic] {
        let m = Machine::new(build_post_anbn(variant)).unwrap();
        let mut words = 0;
        for len in 0..=14u32 {
            for mask in 0u32..1 << len {
                let w: String = (0..len).map(|b| if mask >> b & 1 == 0 { 'a' } else { 'b' }).collect();
                if m.run_str(&w, RunLimits::default()).unwrap().accepted() != in_anbn(&w) {
                    return Err(format!("{}: disagrees on {w:?}", variant.name()));
                }
                words += 1;
            }
        }
        let series: Vec<(u64, u64)> = anbn_growth_sizes()
            .into_iter()
            .map(|n| {
                let r = m.run_str(&format!("{}{}", "a".repeat(n), "b".repeat(n)), RunLimits::default()).unwrap();
                (n as u64, r.steps)
            })
            .collect();
        let g = fit_growth(&series).map_err(|e| e.to_string())?;
        match variant {
            AnbnVariant::Linear if g.verdict != GrowthVerdict::Linear => {
                return Err(format!("linear variant: {}", g.summary()))
            }
            AnbnVariant::Quadratic if g.fitted_exponent < QUADRATIC_MIN_SLOPE => {
                return Err(format!("quadratic variant: {}", g.summary()))
            }
            AnbnVariant::Linear => notes.push(format!(
                "linear: {words} words agree, steps <= {:.3}*n, slope {:.3}",
                g.max_ratio, g.fitted_exponent
            )),
            AnbnVariant::Quadratic => notes.push(format!(
                "quadratic: {words} words agree, steps >= n^2/{:.3}, slope {:.3}",
                g.quadratic_constant(),
                g.fitted_exponent
            )),
        }
    }
    Ok(notes.join("; "))
}

fn criterion_9() -> Outcome {
    let run = |workers: &str| {
        Command::new(env!("CARGO_BIN_EXE_qmlab"))
            .args(["verify", "--seed", "42"])
            .env("QMLAB_WORKERS", workers)
            .output()
            .map_err(|e| e.to_string())
    };
    let a = run("1")?;
    let b = run("3")?;
    if !a.status.success() || !b.status.success() {
        return Err(format!("verify failed: {}", String::from_utf8_lossy(&a.stderr)));
    }
    if a.stdout != b.stdout {
        return Err("reports differ".into());
    }
    Ok(format!("two `verify --seed 42` runs, {} identical bytes", a.stdout.len()))
}

fn main() -> ExitCode {
    let runs = lprime_member_runs();
    let criteria: Vec<Criterion> = vec![
        ("cycle-start queue lengths", Box::new(|| criterion_1(&runs))),
        ("tail step count", Box::new(|| criterion_2(&runs))),
        ("L' acceptor vs oracle", Box::new(criterion_3)),
        ("linear-time growth", Box::new(criterion_4)),
        ("F_k equivalence", Box::new(criterion_5)),
        ("pi bijection and oracle", Box::new(criterion_6)),
        ("bounded delay on the prefix", Box::new(|| criterion_7(&runs))),
        ("Post-machine a^n b^n", Box::new(criterion_8)),
        ("reproducible reports", Box::new(criterion_9)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {} ({name}) [{secs:.1}s]: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} ({name}) [{secs:.1}s]: {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
