use serde::{Deserialize, Serialize};

use crate::bipoly::BiPoly;

/// One mismatched monomial: coefficients in the left and right operand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDiff {
    pub eu: i64,
    pub ev: i64,
    pub a: String,
    pub b: String,
}

/// Outcome of a consistency check. `passed` holds exactly when there is neither a
/// term-level diff nor a recorded failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub diff: Vec<TermDiff>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn pass(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: true,
            diff: Vec::new(),
            failures: Vec::new(),
        }
    }

    /// Term-level comparison of two polynomials.
    pub fn compare(name: impl Into<String>, a: &BiPoly, b: &BiPoly) -> Self {
        let diff: Vec<TermDiff> = a
            .diff(b)
            .into_iter()
            .map(|((eu, ev), x, y)| TermDiff {
                eu,
                ev,
                a: x.to_string(),
                b: y.to_string(),
            })
            .collect();
        Self {
            name: name.into(),
            passed: diff.is_empty(),
            diff,
            failures: Vec::new(),
        }
    }

    pub fn from_failures(name: impl Into<String>, failures: Vec<String>) -> Self {
        Self {
            name: name.into(),
            passed: failures.is_empty(),
            diff: Vec::new(),
            failures,
        }
    }

    pub fn fail(&mut self, msg: impl Into<String>) {
        self.failures.push(msg.into());
        self.passed = false;
    }

    /// Folds `other` into `self`, prefixing its failures with its name.
    pub fn absorb(&mut self, other: CheckReport) {
        if !other.passed {
            self.passed = false;
        }
        self.diff.extend(other.diff);
        self.failures
            .extend(other.failures.into_iter().map(|f| format!("{}: {f}", other.name)));
    }
}
