//! Verification outcomes and their text, CSV and JSON-ready forms.

use std::fmt;

use serde::Serialize;

/// One check: either a whole group of cases that all passed, or a single
/// failing case (or a failing group summary).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: String,
    /// Sortable identifier; numbers inside are zero-padded.
    pub case: String,
    pub seed: u64,
    pub passed: bool,
    /// Number of underlying cases this check covers.
    pub cases: u64,
    pub expected: String,
    pub actual: String,
    /// Free-form measurements, not compared.
    pub note: String,
}

impl Check {
    pub fn new(suite: &str, case: impl Into<String>, seed: u64) -> Self {
        Check {
            suite: suite.to_string(),
            case: case.into(),
            seed,
            passed: true,
            cases: 1,
            expected: String::new(),
            actual: String::new(),
            note: String::new(),
        }
    }

    pub fn outcome(mut self, expected: impl fmt::Display, actual: impl fmt::Display) -> Self {
        self.expected = expected.to_string();
        self.actual = actual.to_string();
        self.passed = self.expected == self.actual;
        self
    }

    pub fn cases(mut self, cases: u64) -> Self {
        self.cases = cases;
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    pub fn status(&self) -> &'static str {
        if self.passed {
            "PASS"
        } else {
            "FAIL"
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} suite={} case={} seed={} cases={} expected={} actual={}",
            self.status(),
            self.suite,
            self.case,
            self.seed,
            self.cases,
            self.expected,
            self.actual
        )?;
        if !self.note.is_empty() {
            write!(f, " note={}", self.note)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(mut checks: Vec<Check>) -> Self {
        checks.sort_by(|a, b| (&a.suite, &a.case, a.seed).cmp(&(&b.suite, &b.case, b.seed)));
        Report { checks }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_text(&self) -> String {
        let mut s: String = self.checks.iter().map(|c| format!("{c}\n")).collect();
        let failed = self.failures().count();
        s.push_str(&format!(
            "{} checks={} failed={}\n",
            if failed == 0 { "PASS" } else { "FAIL" },
            self.checks.len(),
            failed
        ));
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("suite,case,seed,status,cases,expected,actual,note\n");
        for c in &self.checks {
            s.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                csv_field(&c.suite),
                csv_field(&c.case),
                c.seed,
                c.status(),
                c.cases,
                csv_field(&c.expected),
                csv_field(&c.actual),
                csv_field(&c.note)
            ));
        }
        s
    }
}

pub(crate) fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_sorts_and_summarises() {
        let r = Report::new(vec![
            Check::new("pi", "k02", 0).outcome("x", "x"),
            Check::new("fk", "k01", 0).outcome("a,b", "c"),
        ]);
        assert_eq!(r.checks[0].suite, "fk");
        assert!(!r.passed());
        assert!(r.to_text().ends_with("FAIL checks=2 failed=1\n"));
        assert!(r.to_csv().contains("fk,k01,0,FAIL,1,\"a,b\",c,\n"));
    }
}
