use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use qmlab_core::harness::{self, bench_series, default_bench_sizes, verify_batch, Report, Suite, VerifyOptions};
use qmlab_core::machine::{dump_spec, parse_spec, MachineError, Trace};
use qmlab_core::machines::{builtin, UnknownBuiltin, BUILTIN_NAMES};
use qmlab_core::oracles::{
    case_seed, gen_lk, gen_lprime, in_lprime, mutate_negative, read_batch, reference_fk, write_batch, BatchCase,
    Clause, Expected, InstanceRng,
};
use qmlab_core::{Machine, MachineSpec, RunLimits, Verdict};

const EXIT_CODES: &str = "\
Exit status:
  0  accepted / all checks passed
  1  rejected (or halted without verdict) / some check failed
  2  usage error
  3  unknown machine or suite
  4  unreadable file, malformed spec, batch file or input
  5  step limit exceeded
  6  machine fault (pop on empty storage, head left of the tape)

Builtin machines: mk:<k>, tk:<k>, lprime, anbn:linear, anbn:quadratic.
Set QMLAB_WORKERS to fix the number of worker threads.";

#[derive(Parser)]
#[command(name = "qmlab", version, about = "Queue, pushdown and tape machine laboratory", after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run a machine on one input.
    Run {
        /// Builtin name or path to a spec file.
        #[arg(long)]
        machine: String,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        input: String,
        /// Defaults to 64·(n+1)².
        #[arg(long)]
        max_steps: Option<u64>,
        /// Write the step trace here (CSV, or JSON with --format json).
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check machines against oracles and formulas.
    Verify {
        /// lprime, fk, anbn, formulas, pi or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        k_max: Option<usize>,
        /// Seeded cases per group.
        #[arg(long)]
        cases: Option<usize>,
        /// Length bound of exhaustive scans.
        #[arg(long)]
        exhaustive_len: Option<usize>,
        /// Check a batch file instead of a suite (needs --machine).
        #[arg(long, requires = "machine")]
        batch: Option<PathBuf>,
        #[arg(long)]
        machine: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Step counts over growing inputs, with a growth fit.
    Bench {
        /// Builtin machine name.
        #[arg(long)]
        machine: String,
        /// Comma-separated input sizes; default 2^8..2^16.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a batch file of seeded instances.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// lprime: violate this clause (v-mismatch, w-not-pi, bad-length, bad-format).
        #[arg(long)]
        clause: Option<String>,
        /// lk: comma-separated prefix lengths (random 1..=8 otherwise).
        #[arg(long, value_delimiter = ',')]
        f: Vec<usize>,
        /// lk: number of rows (random 1..=24 otherwise).
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a machine in the spec file format.
    Dump {
        #[arg(long)]
        machine: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Lprime,
    Lk,
}

enum Failure {
    Unknown(String),
    Io(String),
}

impl Failure {
    fn report(self) -> ExitCode {
        match self {
            Failure::Unknown(m) => {
                eprintln!("error: {m}");
                ExitCode::from(3)
            }
            Failure::Io(m) => {
                eprintln!("error: {m}");
                ExitCode::from(4)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { machine, input, max_steps, trace, format } => cmd_run(&machine, &input, max_steps, trace, format),
        Command::Verify { suite, seed, k_max, cases, exhaustive_len, batch, machine, format, out } => {
            let opts = VerifyOptions { seed, k_max, cases, exhaustive_len };
            cmd_verify(&suite, &opts, batch.as_deref().zip(machine.as_deref()), format, out.as_deref())
        }
        Command::Bench { machine, sizes, seed, format, out } => cmd_bench(&machine, sizes, seed, format, out.as_deref()),
        Command::Gen { family, k, count, seed, clause, f, m, out } => {
            cmd_gen(family, k, count, seed, clause.as_deref(), &f, m, out.as_deref())
        }
        Command::Dump { machine } => load_machine(&machine).map(|spec| {
            print!("{}", dump_spec(&spec));
            ExitCode::SUCCESS
        }),
    };
    result.unwrap_or_else(Failure::report)
}

fn load_machine(reference: &str) -> Result<MachineSpec, Failure> {
    match builtin(reference) {
        Ok(spec) => Ok(spec),
        Err(UnknownBuiltin(_)) if Path::new(reference).is_file() => {
            let text = fs::read_to_string(reference).map_err(|e| Failure::Io(format!("{reference}: {e}")))?;
            parse_spec(&text).map_err(|e| Failure::Io(format!("{reference}: {e}")))
        }
        Err(e) => Err(Failure::Unknown(format!("{e}; builtins are {}", BUILTIN_NAMES.join(", ")))),
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn trace_json(t: &Trace) -> serde_json::Value {
    let records: Vec<_> = t
        .records()
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let lengths: Vec<usize> = (0..t.storage_ids().len()).map(|s| t.length_after(i + 1, s)).collect();
            json!({
                "step": r.step,
                "state": t.state_name(r.state),
                "consumed": r.consumed,
                "lengths": lengths,
                "emit": r.emitted.map(String::from),
            })
        })
        .collect();
    json!({ "storages": t.storage_ids(), "records": records })
}

fn cmd_run(
    machine: &str,
    input: &str,
    max_steps: Option<u64>,
    trace: Option<PathBuf>,
    format: Format,
) -> Result<ExitCode, Failure> {
    let spec = load_machine(machine)?;
    let m = Machine::new(spec).map_err(|e| Failure::Io(e.to_string()))?;
    let limits = RunLimits { max_steps, trace: trace.is_some() };
    let r = m.run_str(input, limits).map_err(|e| match e {
        MachineError::InputSymbol { .. } => Failure::Io(format!("input: {e}")),
        e => Failure::Io(e.to_string()),
    })?;
    if let (Some(path), Some(t)) = (trace.as_deref(), r.trace.as_ref()) {
        let text = match format {
            Format::Json => trace_json(t).to_string() + "\n",
            _ => t.to_csv(),
        };
        emit(&text, Some(path))?;
    }
    let fault = match r.verdict {
        Verdict::Fault(f) => format!("{f:?}"),
        _ => String::new(),
    };
    match format {
        Format::Text => {
            println!("verdict: {}", r.verdict.name());
            println!("steps: {}", r.steps);
            println!("output: {}", r.output);
            println!("consumed: {}", r.input_consumed);
            println!("max_storage_len: {}", r.max_storage_len);
            println!("final_state: {}", r.final_state);
            if !fault.is_empty() {
                println!("fault: {fault}");
            }
        }
        Format::Csv => {
            println!("verdict,steps,output,consumed,max_storage_len,final_state");
            println!(
                "{},{},{},{},{},{}",
                r.verdict.name(),
                r.steps,
                r.output,
                r.input_consumed,
                r.max_storage_len,
                r.final_state
            );
        }
        Format::Json => println!(
            "{}",
            json!({
                "machine": machine,
                "verdict": r.verdict.name(),
                "steps": r.steps,
                "output": r.output,
                "consumed": r.input_consumed,
                "max_storage_len": r.max_storage_len,
                "final_state": r.final_state,
                "fault": (!fault.is_empty()).then_some(fault),
            })
        ),
    }
    Ok(ExitCode::from(match r.verdict {
        Verdict::Accept => 0,
        Verdict::Reject | Verdict::HaltNoRule => 1,
        Verdict::StepLimitExceeded => 5,
        Verdict::Fault(_) => 6,
    }))
}

fn render_report(report: &Report, format: Format) -> String {
    match format {
        Format::Text => report.to_text(),
        Format::Csv => report.to_csv(),
        Format::Json => serde_json::to_string_pretty(report).expect("report serializes") + "\n",
    }
}

fn cmd_verify(
    suite: &str,
    opts: &VerifyOptions,
    batch: Option<(&Path, &str)>,
    format: Format,
    out: Option<&Path>,
) -> Result<ExitCode, Failure> {
    let report = match batch {
        Some((path, machine)) => {
            let m = Machine::new(load_machine(machine)?).map_err(|e| Failure::Io(e.to_string()))?;
            let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            let cases = read_batch(&text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            harness::with_workers(|| Report::new(verify_batch(&m, &cases, opts.seed)))
        }
        None => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse::<Suite>().map_err(|e| Failure::Unknown(e.to_string()))?]
            };
            harness::verify(&suites, opts)
        }
    };
    emit(&render_report(&report, format), out)?;
    for f in report.failures() {
        eprintln!("{f}");
    }
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_bench(machine: &str, sizes: Vec<usize>, seed: u64, format: Format, out: Option<&Path>) -> Result<ExitCode, Failure> {
    builtin(machine).map_err(|e| Failure::Unknown(e.to_string()))?;
    let sizes = if sizes.is_empty() { default_bench_sizes() } else { sizes };
    let report = harness::with_workers(|| bench_series(machine, &sizes, seed)).map_err(|e| Failure::Io(e.to_string()))?;
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        _ => report.to_csv(),
    };
    emit(&text, out)?;
    eprintln!("growth: {}", report.growth.summary());
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_gen(
    family: Family,
    k: usize,
    count: usize,
    seed: u64,
    clause: Option<&str>,
    f: &[usize],
    m: Option<usize>,
    out: Option<&Path>,
) -> Result<ExitCode, Failure> {
    let usage = |e: String| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    };
    let clause: Option<Clause> = match clause.map(str::parse).transpose() {
        Ok(c) => c,
        Err(e) => return Ok(usage(e.to_string())),
    };
    let mut cases = Vec::with_capacity(count);
    for i in 0..count {
        let s = case_seed(seed, i as u64);
        let case = match family {
            Family::Lprime => {
                let inst = match gen_lprime(k, s) {
                    Ok(x) => x,
                    Err(e) => return Ok(usage(e.to_string())),
                };
                let inst = match clause {
                    None => inst,
                    Some(c) => match mutate_negative(&inst, c, case_seed(s, 1)) {
                        Ok(x) => x,
                        Err(e) => return Ok(usage(e.to_string())),
                    },
                };
                let expected = if in_lprime(&inst.rendered) { Expected::Accept } else { Expected::Reject };
                BatchCase { tag: format!("{} seed={s}", inst.tag()), word: inst.rendered, expected }
            }
            Family::Lk => {
                let mut rng = InstanceRng::new(s);
                let lens: Vec<usize> = if f.is_empty() { (0..k).map(|_| 1 + rng.below(8)).collect() } else { f.to_vec() };
                let rows = m.unwrap_or_else(|| 1 + rng.below(24));
                let inst = match gen_lk(k, &lens, rows, case_seed(s, 1)) {
                    Ok(x) => x,
                    Err(e) => return Ok(usage(e.to_string())),
                };
                let word = inst.render();
                let output = reference_fk(k, &word).expect("generated instances are well formed");
                BatchCase { tag: format!("lk k={k} m={rows} seed={s}"), word, expected: Expected::Output(output) }
            }
        };
        cases.push(case);
    }
    emit(&write_batch(&cases), out)?;
    Ok(ExitCode::SUCCESS)
}
