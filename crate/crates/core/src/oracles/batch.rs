//! Instance batch files: one case per line,
//! `<word> TAB <accept|reject|output=<word>> TAB <tag>`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expected {
    Accept,
    Reject,
    Output(String),
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expected::Accept => f.write_str("accept"),
            Expected::Reject => f.write_str("reject"),
            Expected::Output(w) => write!(f, "output={w}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BatchCase {
    pub word: String,
    pub expected: Expected,
    pub tag: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("batch line {line}: {message}")]
pub struct BatchError {
    pub line: usize,
    pub message: String,
}

impl FromStr for Expected {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "accept" => Ok(Expected::Accept),
            "reject" => Ok(Expected::Reject),
            _ => s
                .strip_prefix("output=")
                .map(|w| Expected::Output(w.to_string()))
                .ok_or_else(|| format!("unknown expectation {s:?}")),
        }
    }
}

pub fn write_batch(cases: &[BatchCase]) -> String {
    cases.iter().map(|c| format!("{}\t{}\t{}\n", c.word, c.expected, c.tag)).collect()
}

pub fn read_batch(text: &str) -> Result<Vec<BatchCase>, BatchError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, l)| {
            let err = |message: String| BatchError { line: i + 1, message };
            let mut fields = l.split('\t');
            let (Some(word), Some(expected), Some(tag), None) =
                (fields.next(), fields.next(), fields.next(), fields.next())
            else {
                return Err(err("expected three tab-separated fields".into()));
            };
            Ok(BatchCase { word: word.to_string(), expected: expected.parse().map_err(err)?, tag: tag.to_string() })
        })
        .collect()
}
