//! Pass/fail reports produced by every verifier in the crate.
//!
//! A verifier never returns an error for a failed axiom; it records a [`Check`]
//! with the first witness it found. Field order is fixed so serialized reports
//! are byte-stable across runs.

use serde::Serialize;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

/// How the quantifier of a check was discharged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sampled,
    Structural,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub mode: Mode,
    pub cases: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, mode: Mode, cases: u64) -> Self {
        Check {
            name: name.into(),
            status: Status::Pass,
            mode,
            cases,
            witness: None,
            note: None,
        }
    }

    pub fn fail(name: impl Into<String>, mode: Mode, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Fail,
            mode,
            cases: 1,
            witness: Some(witness.into()),
            note: None,
        }
    }

    pub fn inconclusive(name: impl Into<String>, note: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Inconclusive,
            mode: Mode::Structural,
            cases: 0,
            witness: None,
            note: Some(note.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Counts cases of a universally quantified property and keeps the first
/// counterexample.
#[derive(Debug)]
pub struct Tally {
    name: String,
    mode: Mode,
    cases: u64,
    witness: Option<String>,
}

impl Tally {
    pub fn new(name: impl Into<String>, mode: Mode) -> Self {
        Tally {
            name: name.into(),
            mode,
            cases: 0,
            witness: None,
        }
    }

    /// Record one case. The witness closure only runs for the first failure.
    pub fn case<F: FnOnce() -> String>(&mut self, ok: bool, witness: F) {
        self.cases += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub fn failed(&self) -> bool {
        self.witness.is_some()
    }

    pub fn finish(self) -> Check {
        Check {
            status: if self.witness.is_some() {
                Status::Fail
            } else {
                Status::Pass
            },
            name: self.name,
            mode: self.mode,
            cases: self.cases,
            witness: self.witness,
            note: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        ValidationReport {
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
    }

    /// True iff every check passed; inconclusive checks count as not passed.
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn has_failures(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {}", self.subject)?;
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Inconclusive => "INCONCLUSIVE",
            };
            let mode = match c.mode {
                Mode::Exhaustive => "exhaustive",
                Mode::Sampled => "sampled",
                Mode::Structural => "structural",
            };
            write!(f, "  [{tag}] {} ({mode}, {} cases)", c.name, c.cases)?;
            if let Some(w) = &c.witness {
                write!(f, " witness: {w}")?;
            }
            if let Some(n) = &c.note {
                write!(f, " note: {n}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
