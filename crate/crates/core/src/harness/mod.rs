//! Verification suites, exhaustive exploration, growth fitting and
//! benchmark series.
//!
//! Work fans out over a rayon pool; set `QMLAB_WORKERS` to fix its size.
//! Reports are sorted by suite and case id, so their bytes never depend on
//! the number of workers.

mod bench;
mod explore;
mod growth;
mod report;
mod suites;

pub use bench::{bench_input, bench_series, default_bench_sizes, BenchError, BenchReport, BenchRow};
pub use explore::{explore_words, word_count, ExploreError, Exploration};
pub use growth::{fit_growth, GrowthError, GrowthReport, GrowthVerdict, LINEAR_MAX_SLOPE, LINEAR_MAX_SPREAD};
pub use report::{Check, Report};
pub use suites::{
    anbn_growth_sizes, verify_batch, verify_suite, Suite, UnknownSuite, VerifyOptions, QUADRATIC_MIN_SLOPE,
};

pub const WORKERS_ENV: &str = "QMLAB_WORKERS";

/// Worker count from `QMLAB_WORKERS`, if set to a positive integer.
pub fn workers_from_env() -> Option<usize> {
    std::env::var(WORKERS_ENV).ok()?.trim().parse().ok().filter(|&n| n > 0)
}

/// Runs `f` on a pool sized by `QMLAB_WORKERS` (rayon's default otherwise).
pub fn with_workers<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers_from_env() {
        builder = builder.num_threads(n);
    }
    match builder.build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Runs the given suites and merges their checks into one sorted report.
pub fn verify(suites: &[Suite], opts: &VerifyOptions) -> Report {
    with_workers(|| Report::new(suites.iter().flat_map(|&s| verify_suite(s, opts)).collect()))
}
