//! Outcomes of verification runs.

use std::fmt;

/// The first place where two sides of an identity disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    /// Which instance failed, e.g. `i=1 j=2 k=2 l=3 m=0 n=-1`.
    pub context: String,
    /// Location inside the instance (a matrix entry, a window exponent, …).
    pub location: String,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at {}: {} != {}",
            self.context, self.location, self.lhs, self.rhs
        )
    }
}

/// Summary of a family of exact checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub checks: usize,
    pub failures: usize,
    pub first_failure: Option<Mismatch>,
    /// Extra facts worth printing (dimensions, ranks, witnesses).
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> CheckReport {
        CheckReport {
            name: name.into(),
            checks: 0,
            failures: 0,
            first_failure: None,
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// Records one check; `mismatch` is built only on failure.
    pub fn record(&mut self, ok: bool, mismatch: impl FnOnce() -> Mismatch) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(mismatch());
            }
        }
    }

    pub fn record_result(&mut self, result: Result<(), Mismatch>) {
        self.checks += 1;
        if let Err(m) = result {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(m);
            }
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Folds another report's counts into this one.
    pub fn absorb(&mut self, other: CheckReport) {
        self.checks += other.checks;
        self.failures += other.failures;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "FAIL" };
        write!(
            f,
            "{}: {} ({} checks, {} failed)",
            self.name, status, self.checks, self.failures
        )?;
        if let Some(m) = &self.first_failure {
            write!(f, "; first: {}", m)?;
        }
        Ok(())
    }
}
