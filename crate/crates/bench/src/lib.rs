//! Criterion workloads: one validated machine plus a member input per size.

use qmlab_core::harness::bench_input;
use qmlab_core::machines::builtin;
use qmlab_core::Machine;

pub struct Workload {
    pub machine: Machine,
    pub input: Vec<char>,
}

pub fn workload(name: &str, n: usize) -> Workload {
    let machine = Machine::new(builtin(name).expect("builtin name")).expect("builtins are valid");
    let input = bench_input(name, n, 0).expect("size fits the machine").chars().collect();
    Workload { machine, input }
}
