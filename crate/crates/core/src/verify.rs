//! Records produced by the inequality sweeps.

use serde::Serialize;

/// One sampled check of an inequality `lhs <= rhs`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationRecord {
    /// Labelled inputs that produced this check.
    pub inputs: Vec<(String, f64)>,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`; negative when the inequality is violated.
    pub margin: f64,
    pub slack: f64,
    pub pass: bool,
}

impl VerificationRecord {
    /// Builds a record, passing iff `lhs <= rhs + slack`.
    pub fn check(inputs: Vec<(String, f64)>, lhs: f64, rhs: f64, slack: f64) -> Self {
        let pass = lhs <= rhs + slack;
        Self {
            inputs,
            lhs,
            rhs,
            margin: rhs - lhs,
            slack,
            pass,
        }
    }

    /// Value of a labelled input.
    pub fn input(&self, label: &str) -> Option<f64> {
        self.inputs.iter().find(|(k, _)| k == label).map(|(_, v)| *v)
    }

    /// Amount by which `lhs` exceeds `rhs`, or zero.
    pub fn violation(&self) -> f64 {
        (self.lhs - self.rhs).max(0.0)
    }
}

/// Aggregate view over a batch of records.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub checked: usize,
    pub passed: usize,
    pub max_violation: f64,
}

impl Summary {
    pub fn of<'a, I: IntoIterator<Item = &'a VerificationRecord>>(records: I) -> Self {
        let mut summary = Summary {
            checked: 0,
            passed: 0,
            max_violation: 0.0,
        };
        for r in records {
            summary.checked += 1;
            if r.pass {
                summary.passed += 1;
            } else {
                summary.max_violation = summary.max_violation.max(r.violation());
            }
        }
        summary
    }

    pub fn all_passed(&self) -> bool {
        self.checked == self.passed
    }
}

impl std::fmt::Display for Summary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "checked={} passed={} max_violation={:.16e}",
            self.checked, self.passed, self.max_violation
        )
    }
}
