use std::fmt;
use std::time::Duration;

use num_traits::ToPrimitive;
use serde_json::{json, Value};

use super::ExactInt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    /// The offending sequence, or a label for aggregate (count) failures.
    pub input: String,
    pub reason: String,
}

impl Failure {
    pub fn new(input: impl Into<String>, reason: impl Into<String>) -> Self {
        Failure {
            input: input.into(),
            reason: reason.into(),
        }
    }
}

/// Outcome of one verification suite at one size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub suite: String,
    pub n: usize,
    pub k: Option<usize>,
    pub a: Option<u64>,
    pub b: Option<u64>,
    pub checked: ExactInt,
    pub failures: Vec<Failure>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, n: usize) -> Self {
        VerificationReport {
            suite: suite.into(),
            n,
            k: None,
            a: None,
            b: None,
            checked: ExactInt::default(),
            failures: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// One summary line; timing is appended only when asked for, so that
    /// reports from different runs can be compared byte for byte.
    pub fn summary_line(&self, with_timing: bool) -> String {
        let mut line = format!("{} n={}", self.suite, self.n);
        if let Some(k) = self.k {
            line += &format!(" k={k}");
        }
        if let (Some(a), Some(b)) = (self.a, self.b) {
            line += &format!(" a={a} b={b}");
        }
        line += &format!(
            " checked={} failed={} {}",
            self.checked,
            self.failures.len(),
            if self.passed() { "PASS" } else { "FAIL" }
        );
        if with_timing {
            line += &format!(" millis={}", self.elapsed.as_millis());
        }
        line
    }

    /// Structured record: name, n, k, checked, failed, millis.
    pub fn to_json(&self) -> Value {
        let checked = match self.checked.to_u64() {
            Some(c) => json!(c),
            None => json!(self.checked.to_string()),
        };
        let mut record = json!({
            "name": self.suite,
            "n": self.n,
            "k": self.k,
            "checked": checked,
            "failed": self.failures.len(),
            "millis": self.elapsed.as_millis() as u64,
        });
        if let (Some(a), Some(b)) = (self.a, self.b) {
            record["a"] = json!(a);
            record["b"] = json!(b);
        }
        record
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary_line(true))?;
        for failure in &self.failures {
            write!(f, "\n  {}: {}", failure.input, failure.reason)?;
        }
        Ok(())
    }
}
