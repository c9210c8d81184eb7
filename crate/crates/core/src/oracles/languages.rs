//! Direct membership tests for the witness languages.

use std::collections::VecDeque;

use thiserror::Error;

use crate::machines::pi;

/// A word split at the alphabet boundaries `{a,b}* {0,1}* c {0,1}* rest`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Split<'a> {
    pub w: &'a str,
    pub v: &'a str,
    pub v2: &'a str,
    pub tail: &'a str,
}

fn is_letter(c: char) -> bool {
    c == 'a' || c == 'b'
}

fn is_bit(c: char) -> bool {
    c == '0' || c == '1'
}

fn take_while(s: &str, f: impl Fn(char) -> bool) -> (&str, &str) {
    let end = s.find(|c| !f(c)).unwrap_or(s.len());
    s.split_at(end)
}

/// Splits `word` by maximal runs; `None` when there is no `c` after the
/// first two runs or the tail contains anything but `a`/`b`.
pub fn split_shape(word: &str) -> Option<Split<'_>> {
    let (w, rest) = take_while(word, is_letter);
    let (v, rest) = take_while(rest, is_bit);
    let rest = rest.strip_prefix('c')?;
    let (v2, tail) = take_while(rest, is_bit);
    tail.chars().all(is_letter).then_some(Split { w, v, v2, tail })
}

/// `{ w v c v w : v ∈ {0,1}+, w ∈ {a,b}+ }`.
pub fn in_l(word: &str) -> bool {
    match split_shape(word) {
        Some(s) => !s.w.is_empty() && !s.v.is_empty() && s.v == s.v2 && s.w == s.tail,
        None => false,
    }
}

/// `{ w v c v π(w) : v ∈ {0,1}*, w ∈ {a,b}*, |w| = 2^|v| }`.
pub fn in_lprime(word: &str) -> bool {
    let Some(s) = split_shape(word) else {
        return false;
    };
    let len_ok = u32::try_from(s.v.len())
        .ok()
        .and_then(|k| 1usize.checked_shl(k))
        .is_some_and(|n| n == s.w.len());
    len_ok && s.v == s.v2 && pi(s.w.as_bytes()) == s.tail.as_bytes()
}

/// Run lengths `[|w|, |v|, |v'|, |tail|]` of every shape-plausible word of
/// total length `len` (one `c` plus `len − 1` letters and bits).
pub fn shape_partitions(len: usize) -> Vec<[usize; 4]> {
    let Some(rest) = len.checked_sub(1) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for p in 0..=rest {
        for q in 0..=rest - p {
            for r in 0..=rest - p - q {
                out.push([p, q, r, rest - p - q - r]);
            }
        }
    }
    out
}

/// All `2^(len−1)` words `{a,b}^p {0,1}^q c {0,1}^r {a,b}^s` for the given
/// run lengths, in binary counting order.
pub fn shape_words(parts: [usize; 4]) -> impl Iterator<Item = String> {
    let free = parts.iter().sum::<usize>();
    (0u64..1 << free).map(move |mask| {
        let mut s = String::with_capacity(free + 1);
        let mut bit = 0;
        let pairs = [('a', 'b'), ('0', '1'), ('0', '1'), ('a', 'b')];
        for (run, (&len, (zero, one))) in parts.iter().zip(pairs).enumerate() {
            if run == 2 {
                s.push('c');
            }
            for _ in 0..len {
                s.push(if mask >> bit & 1 == 0 { zero } else { one });
                bit += 1;
            }
        }
        s
    })
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("pi_oracle needs a power-of-two length, got {0}")]
pub struct NotPowerOfTwo(pub usize);

/// Emission order of the halving process: traverse the sequence, emitting
/// elements at odd positions and keeping those at even positions, until a
/// single element remains, which is emitted last.
pub fn pi_oracle<T: Clone>(word: &[T]) -> Result<Vec<T>, NotPowerOfTwo> {
    if !word.len().is_power_of_two() {
        return Err(NotPowerOfTwo(word.len()));
    }
    let mut queue: VecDeque<T> = word.iter().cloned().collect();
    let mut out = Vec::with_capacity(word.len());
    while queue.len() > 1 {
        for pos in 1..=queue.len() {
            let x = queue.pop_front().expect("nonempty");
            if pos % 2 == 1 {
                out.push(x);
            } else {
                queue.push_back(x);
            }
        }
    }
    out.extend(queue);
    Ok(out)
}

pub fn pi_oracle_str(word: &str) -> Result<String, NotPowerOfTwo> {
    Ok(pi_oracle(&word.chars().collect::<Vec<_>>())?.into_iter().collect())
}
