//! Reference implementations that the machines are checked against, plus
//! seeded instance generators and the batch file format.
//!
//! Nothing here executes a machine; membership and `F_k` are computed by
//! direct decomposition of the input word.

mod batch;
mod gen;
mod languages;
mod lk;

pub use batch::{read_batch, write_batch, BatchCase, BatchError, Expected};
pub use gen::{
    case_seed, gen_lk, gen_lk_sized, gen_lprime, mutate_negative, Clause, GenError, InstanceRng,
    LprimeInstance, CLAUSES, GENERATOR_VERSION,
};
pub use languages::{
    in_l, in_lprime, pi_oracle, pi_oracle_str, shape_partitions, shape_words, split_shape, NotPowerOfTwo, Split,
};
pub use lk::{parse_lk, reference_fk, LkInstance, LkReject};

/// Whether `word` is `a^n b^n` for some `n ≥ 0`.
pub fn in_anbn(word: &str) -> bool {
    let n = word.len() / 2;
    word.len().is_multiple_of(2) && word[..n].bytes().all(|b| b == b'a') && word[n..].bytes().all(|b| b == b'b')
}
