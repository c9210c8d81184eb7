//! Seeded instance generators.
//!
//! Every generator draws from [`InstanceRng`]: ChaCha8 as implemented by
//! `rand_chacha` 0.3, seeded with `SeedableRng::seed_from_u64(seed)`. A
//! random bit is the low bit of the next `u64`; a draw below `n` is the next
//! `u64` modulo `n`. Instances are therefore identical on every platform for
//! a given seed and generator version ([`GENERATOR_VERSION`]).

use std::fmt;
use std::str::FromStr;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::languages::in_lprime;
use super::lk::LkInstance;
use crate::machines::pi;

pub const GENERATOR_VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub struct InstanceRng(ChaCha8Rng);

impl InstanceRng {
    pub fn new(seed: u64) -> Self {
        InstanceRng(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn bit(&mut self) -> u8 {
        (self.0.next_u64() & 1) as u8
    }

    /// Uniform-ish draw from `0..n` (`n > 0`).
    pub fn below(&mut self, n: usize) -> usize {
        (self.0.next_u64() % n as u64) as usize
    }

    pub fn letter(&mut self) -> char {
        if self.bit() == 0 {
            'a'
        } else {
            'b'
        }
    }

    pub fn bit_char(&mut self) -> char {
        if self.bit() == 0 {
            '0'
        } else {
            '1'
        }
    }
}

/// Derives an independent per-case seed from a suite seed and a case index.
pub fn case_seed(seed: u64, case: u64) -> u64 {
    InstanceRng::new(seed ^ case.wrapping_mul(0x9E37_79B9_7F4A_7C15)).0.next_u64()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("cannot apply {clause} to this instance: {reason}")]
    Impossible { clause: Clause, reason: String },
    #[error("mutation {clause} produced a member: {word}")]
    StillMember { clause: Clause, word: String },
}

pub fn gen_lk(k: usize, f: &[usize], m: usize, seed: u64) -> Result<LkInstance, GenError> {
    if k == 0 || f.len() != k || f.contains(&0) || m == 0 {
        return Err(GenError::Parameters(format!("need k ≥ 1, {k} prefix lengths ≥ 1 and m ≥ 1")));
    }
    let mut rng = InstanceRng::new(seed);
    let prefixes = f.iter().map(|&len| (0..len).map(|_| rng.bit()).collect()).collect();
    let rows = (0..m).map(|_| (0..k).map(|_| rng.bit()).collect()).collect();
    Ok(LkInstance { k, prefixes, rows })
}

/// Random `L_k` instance whose rendering has about `n` symbols: prefix
/// lengths near `n / (4k)` with a seeded jitter, the rest spent on rows.
pub fn gen_lk_sized(k: usize, n: usize, seed: u64) -> Result<LkInstance, GenError> {
    let mut rng = InstanceRng::new(seed);
    let base = (n / (4 * k.max(1))).max(1);
    let f: Vec<usize> = (0..k).map(|_| base + rng.below(base.div_ceil(4).max(1))).collect();
    let used = f.iter().sum::<usize>() + k;
    let m = (n.saturating_sub(used) / (k + 1)).max(1);
    gen_lk(k, &f, m, rng.0.next_u64())
}

/// A member `w v c v π(w)` of the power-of-two language, or a tagged
/// non-member derived from one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LprimeInstance {
    pub v: String,
    pub w: String,
    pub rendered: String,
    /// `None` for members; the violated clause otherwise.
    pub violated: Option<Clause>,
}

impl LprimeInstance {
    pub fn member(v: String, w: String) -> Self {
        let w_pi: String = pi(&w.chars().collect::<Vec<_>>()).into_iter().collect();
        let rendered = format!("{w}{v}c{v}{w_pi}");
        LprimeInstance { v, w, rendered, violated: None }
    }

    pub fn k(&self) -> usize {
        self.v.len()
    }

    /// Length of the prefix `w v c v`.
    pub fn prefix_len(&self) -> usize {
        self.w.len() + 2 * self.v.len() + 1
    }

    pub fn tag(&self) -> String {
        match self.violated {
            None => format!("member k={}", self.k()),
            Some(c) => format!("{c} k={}", self.k()),
        }
    }
}

pub fn gen_lprime(k: usize, seed: u64) -> Result<LprimeInstance, GenError> {
    if k > 24 {
        return Err(GenError::Parameters(format!("k = {k} would need a 2^{k}-symbol word")));
    }
    let mut rng = InstanceRng::new(seed);
    let v: String = (0..k).map(|_| rng.bit_char()).collect();
    let w: String = (0..1usize << k).map(|_| rng.letter()).collect();
    Ok(LprimeInstance::member(v, w))
}

/// Membership conditions a negative instance can break.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Clause {
    /// The two bit strings differ in one position.
    VMismatch,
    /// The trailing block is not `π(w)`.
    WNotPi,
    /// `|w| ≠ 2^|v|`.
    BadLength,
    /// The word does not have the `{a,b}* {0,1}* c {0,1}* {a,b}*` shape.
    BadFormat,
}

pub const CLAUSES: [Clause; 4] = [Clause::VMismatch, Clause::WNotPi, Clause::BadLength, Clause::BadFormat];

impl Clause {
    pub fn name(self) -> &'static str {
        match self {
            Clause::VMismatch => "v-mismatch",
            Clause::WNotPi => "w-not-pi",
            Clause::BadLength => "bad-length",
            Clause::BadFormat => "bad-format",
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Clause {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CLAUSES
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| GenError::Parameters(format!("unknown clause {s:?}")))
    }
}

/// Breaks exactly one membership condition of a member instance. The
/// result is checked against [`in_lprime`] before it is returned.
pub fn mutate_negative(inst: &LprimeInstance, clause: Clause, seed: u64) -> Result<LprimeInstance, GenError> {
    if inst.violated.is_some() {
        return Err(GenError::Impossible { clause, reason: "instance is already a non-member".into() });
    }
    let mut rng = InstanceRng::new(seed);
    let k = inst.k();
    let w_pi: String = pi(&inst.w.chars().collect::<Vec<_>>()).into_iter().collect();
    let flip = |s: &str, at: usize| -> String {
        s.char_indices()
            .map(|(i, c)| {
                if i != at {
                    c
                } else {
                    match c {
                        '0' => '1',
                        '1' => '0',
                        'a' => 'b',
                        _ => 'a',
                    }
                }
            })
            .collect()
    };
    let (v, w) = (&inst.v, &inst.w);
    let rendered = match clause {
        Clause::VMismatch => {
            if k == 0 {
                return Err(GenError::Impossible { clause, reason: "v is empty".into() });
            }
            format!("{w}{v}c{}{w_pi}", flip(v, rng.below(k)))
        }
        Clause::WNotPi => format!("{w}{v}c{v}{}", flip(&w_pi, rng.below(w_pi.len()))),
        Clause::BadLength => {
            let extra = rng.bit_char();
            format!("{w}{v}{extra}c{v}{extra}{w_pi}")
        }
        Clause::BadFormat => {
            let mut chars: Vec<char> = inst.rendered.chars().collect();
            let at = rng.below(chars.len() + 1);
            chars.insert(at, 'c');
            chars.into_iter().collect()
        }
    };
    if in_lprime(&rendered) {
        return Err(GenError::StillMember { clause, word: rendered });
    }
    Ok(LprimeInstance { v: inst.v.clone(), w: inst.w.clone(), rendered, violated: Some(clause) })
}
