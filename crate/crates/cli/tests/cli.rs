use std::path::PathBuf;
use std::process::{Command, Output};

fn qmlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmlab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qmlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn run_accepts_member() {
    let o = qmlab(&["run", "--machine", "lprime", "--input", "aca"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: accept"));
}

#[test]
fn run_exit_codes() {
    assert_eq!(qmlab(&["run", "--machine", "lprime", "--input", "acb"]).status.code(), Some(1));
    assert_eq!(qmlab(&["run", "--machine", "nope", "--input", "a"]).status.code(), Some(3));
    assert_eq!(qmlab(&["run", "--machine", "lprime", "--input", "x"]).status.code(), Some(4));
    let limited = qmlab(&["run", "--machine", "anbn:quadratic", "--input", "aaaabbbb", "--max-steps", "3"]);
    assert_eq!(limited.status.code(), Some(5));
    assert_eq!(qmlab(&["run", "--input", "a"]).status.code(), Some(2));
    assert_eq!(qmlab(&["verify", "--suite", "nope"]).status.code(), Some(3));
}

#[test]
fn run_reports_fault() {
    let spec = "name: faulty\nstates: s\nstart: s\ninput_alphabet: a\noutput_alphabet:\nstorage: q queue a\n\
                acceptance: empty_all_storages\nmode: online\nepsilon_accept: false\ns | * | * -> s | n | pop | -\n";
    let path = scratch("faulty.qm");
    std::fs::write(&path, spec).unwrap();
    let o = qmlab(&["run", "--machine", path.to_str().unwrap(), "--input", "a"]);
    assert_eq!(o.status.code(), Some(6), "{}", String::from_utf8_lossy(&o.stderr));
    std::fs::write(&path, "states: s\nbogus line\n").unwrap();
    assert_eq!(qmlab(&["run", "--machine", path.to_str().unwrap(), "--input", "a"]).status.code(), Some(4));
}

#[test]
fn run_writes_trace_and_fk_output() {
    let path = scratch("trace.csv");
    let o = qmlab(&["run", "--machine", "mk:2", "--input", "01#1$00$11$", "--trace", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("output: 01$10$"));
    let trace = std::fs::read_to_string(&path).unwrap();
    assert!(trace.starts_with("step,state,consumed,len(q1),len(q2),emit\n"));
    assert_eq!(trace.lines().count(), 12);
    let json = qmlab(&["run", "--machine", "tk:2", "--input", "01#1$00$11$", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["output"], "01$10$");
    assert_eq!(v["verdict"], "accept");
}

#[test]
fn verify_pi_passes() {
    let o = qmlab(&["verify", "--suite", "pi", "--k-max", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("case=oracle/k12"));
    assert!(text.ends_with("failed=0\n"));
}

#[test]
fn verify_formulas_passes() {
    let o = qmlab(&["verify", "--suite", "formulas", "--k-max", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("case=cycles/k03 seed=0 cases=100 expected=15 9 5 2 actual=15 9 5 2"));
}

#[test]
fn verify_report_formats() {
    let csv = qmlab(&["verify", "--suite", "pi", "--k-max", "4", "--format", "csv"]);
    assert!(stdout(&csv).starts_with("suite,case,seed,status,cases,expected,actual,note\n"));
    let json = qmlab(&["verify", "--suite", "pi", "--k-max", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn gen_then_verify_batch() {
    let pos = scratch("pos.tsv");
    let neg = scratch("neg.tsv");
    let lk = scratch("lk.tsv");
    for (args, path) in [
        (vec!["--family", "lprime", "--k", "3", "--count", "20"], &pos),
        (vec!["--family", "lprime", "--k", "3", "--count", "20", "--clause", "w-not-pi"], &neg),
        (vec!["--family", "lk", "--k", "2", "--count", "20"], &lk),
    ] {
        let mut full = vec!["gen", "--seed", "7", "--out", path.to_str().unwrap()];
        full.extend(args);
        assert_eq!(qmlab(&full).status.code(), Some(0));
    }
    let text = std::fs::read_to_string(&neg).unwrap();
    assert!(text.lines().all(|l| l.split('\t').nth(1) == Some("reject")));
    for (path, machine) in [(&pos, "lprime"), (&neg, "lprime"), (&lk, "mk:2"), (&lk, "tk:2")] {
        let o = qmlab(&["verify", "--batch", path.to_str().unwrap(), "--machine", machine]);
        assert_eq!(o.status.code(), Some(0), "{machine}: {}", stdout(&o));
    }
    let wrong = qmlab(&["verify", "--batch", pos.to_str().unwrap(), "--machine", "anbn:linear"]);
    assert_eq!(wrong.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&wrong.stderr).contains("FAIL suite=batch"));
    let impossible = qmlab(&["gen", "--family", "lprime", "--k", "0", "--clause", "v-mismatch"]);
    assert_eq!(impossible.status.code(), Some(2));
}

#[test]
fn gen_is_seed_stable() {
    let a = qmlab(&["gen", "--family", "lk", "--k", "3", "--seed", "11"]);
    let b = qmlab(&["gen", "--family", "lk", "--k", "3", "--seed", "11"]);
    let c = qmlab(&["gen", "--family", "lk", "--k", "3", "--seed", "12"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn bench_emits_csv() {
    let o = qmlab(&["bench", "--machine", "tk:2", "--sizes", "256,512,1024,2048"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("n,steps,max_len,verdict\n"));
    assert_eq!(text.lines().count(), 5);
    assert!(String::from_utf8_lossy(&o.stderr).contains("verdict=linear"));
    assert_eq!(qmlab(&["bench", "--machine", "lprime", "--sizes", "100,200,300,400"]).status.code(), Some(4));
}

#[test]
fn dump_round_trips_through_run() {
    let o = qmlab(&["dump", "--machine", "anbn:linear"]);
    let path = scratch("anbn.qm");
    std::fs::write(&path, &o.stdout).unwrap();
    let r = qmlab(&["run", "--machine", path.to_str().unwrap(), "--input", "aaabbb"]);
    assert_eq!(r.status.code(), Some(0));
}

#[test]
fn workers_do_not_change_reports() {
    let run = |workers: &str| {
        Command::new(env!("CARGO_BIN_EXE_qmlab"))
            .args(["verify", "--suite", "fk", "--cases", "50", "--seed", "3"])
            .env("QMLAB_WORKERS", workers)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("4"));
}
