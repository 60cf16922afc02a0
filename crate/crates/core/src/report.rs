//! Pass/fail reports shared by every axiom checker.

use std::fmt;

use serde::Serialize;

use crate::linalg::{is_zero_vector, Vector};

/// One failing identity instance: which law, on which basis indices, with
/// the nonzero residual (left side minus right side) in coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: String,
    pub indices: Vec<usize>,
    pub residual: Vector,
}

/// Outcome of a check. Violations are recorded in the order the checker
/// visits basis tuples, which is lexicographic per law.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub check: String,
    pub passed: bool,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new(check: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            passed: true,
            violations: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.passed
    }

    /// Records `residual` under `law` when it is nonzero.
    pub fn expect_zero(&mut self, law: &str, indices: &[usize], residual: Vector) {
        if !is_zero_vector(&residual) {
            self.fail(law, indices, residual);
        }
    }

    pub fn fail(&mut self, law: &str, indices: &[usize], residual: Vector) {
        self.passed = false;
        self.violations.push(Violation {
            law: law.to_string(),
            indices: indices.to_vec(),
            residual,
        });
    }

    /// Folds another report in, prefixing its law names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        if !other.passed {
            self.passed = false;
        }
        for mut v in other.violations {
            v.law = format!("{prefix}{}", v.law);
            self.violations.push(v);
        }
    }

    pub fn first_violation(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {}",
            self.check,
            if self.passed { "pass" } else { "FAIL" }
        )?;
        for v in &self.violations {
            let r: Vec<String> = v.residual.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  {} {:?}: [{}]", v.law, v.indices, r.join(", "))?;
        }
        Ok(())
    }
}
