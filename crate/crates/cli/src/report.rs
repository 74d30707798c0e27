use std::fmt::Write as _;

use centralizer::report::{CheckResult, LaxReport};
use serde::Serialize;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witnesses: Vec<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: true,
            witnesses: Vec::new(),
        }
    }

    /// Passes when `ok`; otherwise fails with the single witness `why`.
    pub fn expect(name: impl Into<String>, ok: bool, why: impl FnOnce() -> String) -> Self {
        Self {
            name: name.into(),
            passed: ok,
            witnesses: if ok { Vec::new() } else { vec![why()] },
        }
    }
}

impl From<CheckResult> for Check {
    fn from(c: CheckResult) -> Self {
        Self {
            passed: c.passed(),
            name: c.name,
            witnesses: c.failures,
        }
    }
}

/// Outcome of one command. Serialized field order is part of the JSON schema.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Report {
    pub command: Vec<String>,
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub verdict: &'static str,
    pub exit_code: i32,
}

impl Report {
    pub fn new(command: Vec<String>, seed: Option<u64>) -> Self {
        Self {
            command,
            seed,
            checks: Vec::new(),
            notes: Vec::new(),
            verdict: "PASS",
            exit_code: 0,
        }
    }

    pub fn push(&mut self, check: Check) {
        if !check.passed {
            self.verdict = "FAIL";
            self.exit_code = 1;
        }
        self.checks.push(check);
    }

    pub fn extend(&mut self, prefix: &str, lax: LaxReport) {
        for c in lax.checks {
            let mut check = Check::from(c);
            if !prefix.is_empty() {
                check.name = format!("{prefix}: {}", check.name);
            }
            self.push(check);
        }
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    pub fn passed(&self) -> bool {
        self.exit_code == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "$ centralizer {}", self.command.join(" "));
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed: {seed}");
        }
        for c in &self.checks {
            if c.passed {
                let _ = writeln!(out, "ok    {}", c.name);
            } else {
                let _ = writeln!(out, "FAIL  {} ({} witnesses)", c.name, c.witnesses.len());
                for w in &c.witnesses {
                    let _ = writeln!(out, "      {w}");
                }
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "  {n}");
        }
        let _ = writeln!(out, "verdict: {}", self.verdict);
        out
    }
}
