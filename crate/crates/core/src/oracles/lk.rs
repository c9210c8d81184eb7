//! Structured `L_k` instances and the direct evaluator for `F_k`.

use std::fmt;

use thiserror::Error;

/// A well-formed member of `L_k`: `k` nonempty prefix strings and `m ≥ 1`
/// rows of `k` bits each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LkInstance {
    pub k: usize,
    /// `prefixes[i]` is `x_{i+1,1} … x_{i+1,f_{i+1}}`.
    pub prefixes: Vec<Vec<u8>>,
    /// `rows[j][i]` is `x_{i+1, f_{i+1}+j+1}`.
    pub rows: Vec<Vec<u8>>,
}

impl LkInstance {
    pub fn f(&self) -> Vec<usize> {
        self.prefixes.iter().map(Vec::len).collect()
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn render(&self) -> String {
        let bit = |b: &u8| if *b == 0 { '0' } else { '1' };
        let mut s: String = self
            .prefixes
            .iter()
            .map(|p| p.iter().map(bit).collect::<String>())
            .collect::<Vec<_>>()
            .join("#");
        s.push('$');
        for row in &self.rows {
            s.extend(row.iter().map(bit));
            s.push('$');
        }
        s
    }

    /// Length of [`LkInstance::render`] without building it.
    pub fn rendered_len(&self) -> usize {
        self.prefixes.iter().map(Vec::len).sum::<usize>() + self.k + self.rows.len() * (self.k + 1)
    }

    /// Full content of stream `i`: its prefix followed by its column of rows.
    pub fn stream(&self, i: usize) -> Vec<u8> {
        let mut s = self.prefixes[i].clone();
        s.extend(self.rows.iter().map(|r| r[i]));
        s
    }

    /// Expected `F_k` output: for every round `j`, `x_{1,j} … x_{k,j} $`.
    pub fn expected_output(&self) -> String {
        let streams: Vec<Vec<u8>> = (0..self.k).map(|i| self.stream(i)).collect();
        let mut out = String::with_capacity(self.rows.len() * (self.k + 1));
        for j in 0..self.rows.len() {
            for s in &streams {
                out.push(if s[j] == 0 { '0' } else { '1' });
            }
            out.push('$');
        }
        out
    }
}

impl fmt::Display for LkInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LkReject {
    #[error("position {position}: expected {expected} segments before the first $, found {found}")]
    SegmentCount { position: usize, expected: usize, found: usize },
    #[error("position {position}: empty segment")]
    EmptySegment { position: usize },
    #[error("position {position}: row of length {found}, expected {expected}")]
    RowLength { position: usize, expected: usize, found: usize },
    #[error("position {position}: missing terminating $")]
    MissingTerminator { position: usize },
    #[error("position {position}: unexpected symbol {symbol:?}")]
    BadSymbol { position: usize, symbol: char },
    #[error("no rows after the first $")]
    NoRows,
    #[error("k must be at least 1")]
    ZeroK,
}

fn bit(c: char) -> Option<u8> {
    match c {
        '0' => Some(0),
        '1' => Some(1),
        _ => None,
    }
}

pub fn parse_lk(k: usize, word: &str) -> Result<LkInstance, LkReject> {
    if k == 0 {
        return Err(LkReject::ZeroK);
    }
    let chars: Vec<char> = word.chars().collect();
    let mut pos = 0;
    let mut prefixes: Vec<Vec<u8>> = vec![Vec::new()];
    loop {
        match chars.get(pos) {
            None => return Err(LkReject::MissingTerminator { position: pos }),
            Some(&c) => match (c, bit(c)) {
                (_, Some(b)) => prefixes.last_mut().expect("nonempty").push(b),
                ('#' | '$', _) => {
                    if prefixes.last().is_some_and(Vec::is_empty) {
                        return Err(LkReject::EmptySegment { position: pos });
                    }
                    if c == '$' {
                        if prefixes.len() != k {
                            return Err(LkReject::SegmentCount { position: pos, expected: k, found: prefixes.len() });
                        }
                        pos += 1;
                        break;
                    }
                    if prefixes.len() == k {
                        return Err(LkReject::SegmentCount { position: pos, expected: k, found: k + 1 });
                    }
                    prefixes.push(Vec::new());
                }
                _ => return Err(LkReject::BadSymbol { position: pos, symbol: c }),
            },
        }
        pos += 1;
    }

    let mut rows = Vec::new();
    let mut row = Vec::with_capacity(k);
    let mut row_start = pos;
    while pos < chars.len() {
        let c = chars[pos];
        match (c, bit(c)) {
            (_, Some(b)) => row.push(b),
            ('$', _) => {
                if row.len() != k {
                    return Err(LkReject::RowLength { position: row_start, expected: k, found: row.len() });
                }
                rows.push(std::mem::replace(&mut row, Vec::with_capacity(k)));
                row_start = pos + 1;
            }
            _ => return Err(LkReject::BadSymbol { position: pos, symbol: c }),
        }
        pos += 1;
    }
    if !row.is_empty() {
        return Err(LkReject::MissingTerminator { position: pos });
    }
    if rows.is_empty() {
        return Err(LkReject::NoRows);
    }
    Ok(LkInstance { k, prefixes, rows })
}

/// Evaluates `F_k` directly from the parsed instance.
pub fn reference_fk(k: usize, word: &str) -> Result<String, LkReject> {
    Ok(parse_lk(k, word)?.expected_output())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_example() {
        let inst = parse_lk(2, "01#1$00$11$").unwrap();
        assert_eq!(inst.f(), vec![2, 1]);
        assert_eq!(inst.m(), 2);
        assert_eq!(inst.rows, vec![vec![0, 0], vec![1, 1]]);
        let one = parse_lk(1, "0$1$").unwrap();
        assert_eq!((one.f(), one.m()), (vec![1], 1));
    }

    #[test]
    fn parse_rejections() {
        assert!(matches!(parse_lk(2, "01$00$"), Err(LkReject::SegmentCount { position: 2, .. })));
        assert!(matches!(parse_lk(1, "0#1$0$"), Err(LkReject::SegmentCount { .. })));
        assert!(matches!(parse_lk(2, "#1$00$"), Err(LkReject::EmptySegment { position: 0 })));
        assert!(matches!(parse_lk(2, "0#1$0$"), Err(LkReject::RowLength { position: 4, .. })));
        assert!(matches!(parse_lk(2, "0#1$00"), Err(LkReject::MissingTerminator { .. })));
        assert!(matches!(parse_lk(2, "0#1"), Err(LkReject::MissingTerminator { .. })));
        assert_eq!(parse_lk(2, "0#1$"), Err(LkReject::NoRows));
        assert!(matches!(parse_lk(1, "0$a$"), Err(LkReject::BadSymbol { position: 2, symbol: 'a' })));
    }

    #[test]
    fn reference_examples() {
        assert_eq!(reference_fk(2, "01#1$00$11$").unwrap(), "01$10$");
        assert_eq!(reference_fk(1, "0$1$").unwrap(), "0$");
        assert_eq!(reference_fk(2, "0#1$01$").unwrap(), "01$");
        assert_eq!(reference_fk(2, "011#1$00$11$01$10$").unwrap(), "01$10$11$01$");
    }

    #[test]
    fn render_round_trips() {
        let inst = parse_lk(3, "1#01#110$101$000$").unwrap();
        assert_eq!(inst.render(), "1#01#110$101$000$");
        assert_eq!(inst.rendered_len(), inst.render().len());
    }
}
