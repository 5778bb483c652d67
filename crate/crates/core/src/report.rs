use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactalg::Polynomial;

/// Outcome of one verification suite: a named list of pass/fail checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: Option<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail,
        });
    }

    /// Records `lhs == rhs`; on failure both sides are kept in canonical form.
    pub fn push_eq(&mut self, name: impl Into<String>, lhs: &Polynomial, rhs: &Polynomial) -> bool {
        let passed = lhs == rhs;
        let detail = (!passed).then(|| format!("lhs = {lhs} ; rhs = {rhs}"));
        self.push(name, passed, detail);
        passed
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            write!(f, "{status} {} {}", self.suite, c.name)?;
            if let Some(d) = &c.detail {
                write!(f, ": {d}")?;
            }
            writeln!(f)?;
        }
        writeln!(
            f,
            "suite {}: {}/{} passed",
            self.suite,
            self.passed(),
            self.checks.len()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failure_lines_carry_both_sides() {
        let mut r = Report::new("demo");
        r.push_eq("n=1", &Polynomial::one(), &Polynomial::one());
        r.push_eq("n=2", &"a1".parse().unwrap(), &"2*a1".parse().unwrap());
        assert!(!r.all_passed());
        assert_eq!(
            r.to_string(),
            "PASS demo n=1\nFAIL demo n=2: lhs = a1 ; rhs = 2*a1\nsuite demo: 1/2 passed\n"
        );
    }
}
