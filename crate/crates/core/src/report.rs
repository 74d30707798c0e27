//! Pass/fail records for the coherence checks.

use std::fmt;

use num_bigint::BigInt;

use crate::rings::BasedRing;

/// `name-form [c₀, c₁, …]` for a witness element.
pub fn witness(ring: &BasedRing, v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("{} [{}]", ring.format_element(v), parts.join(", "))
}

/// Which coherence law of a lax functor to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaxMode {
    Unity,
    Associativity,
}

/// One named check and the witnesses it failed on (empty when it passed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub failures: Vec<String>,
}

impl CheckResult {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            failures: Vec::new(),
        }
    }

    pub fn fail(&mut self, witness: impl Into<String>) {
        self.failures.push(witness.into());
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The outcome of a batch of checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaxReport {
    pub checks: Vec<CheckResult>,
}

impl LaxReport {
    pub fn push(&mut self, check: CheckResult) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: LaxReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn failing(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

impl fmt::Display for LaxReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            if check.passed() {
                writeln!(f, "ok    {}", check.name)?;
            } else {
                writeln!(f, "FAIL  {} ({} witnesses)", check.name, check.failures.len())?;
                for w in check.failures.iter().take(5) {
                    writeln!(f, "      {w}")?;
                }
            }
        }
        Ok(())
    }
}
