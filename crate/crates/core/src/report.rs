//! Verdicts and check reports shared by every module.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Outcome of a check.
///
/// `PassUpToFuel` and `Inconclusive` are distinct from `Pass`: a fuel-bounded
/// search that found nothing wrong is never reported as a plain pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
    PassUpToFuel,
    Inconclusive,
}

impl Verdict {
    pub fn is_pass(self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn is_fail(self) -> bool {
        matches!(self, Verdict::Fail)
    }

    /// Pass, or pass within the explored fuel bound.
    pub fn is_pass_like(self) -> bool {
        matches!(self, Verdict::Pass | Verdict::PassUpToFuel)
    }

    /// Conjunction: fail dominates, then inconclusive, then fuel-bounded pass.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            (PassUpToFuel, _) | (_, PassUpToFuel) => PassUpToFuel,
            (NotApplicable, x) | (x, NotApplicable) => x,
            (Pass, Pass) => Pass,
        }
    }

    /// CLI exit code for this verdict.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass | Verdict::NotApplicable => 0,
            Verdict::Fail => 1,
            Verdict::PassUpToFuel | Verdict::Inconclusive => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "not-applicable",
            Verdict::PassUpToFuel => "pass-up-to-fuel",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A named check with a verdict and, on failure, a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report<W> {
    pub property: String,
    pub verdict: Verdict,
    #[serde(default = "Option::default", skip_serializing_if = "Option::is_none")]
    pub witness: Option<W>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl<W> Report<W> {
    pub fn new(property: impl Into<String>, verdict: Verdict, witness: Option<W>) -> Self {
        Report {
            property: property.into(),
            verdict,
            witness,
            notes: Vec::new(),
        }
    }

    pub fn pass(property: impl Into<String>) -> Self {
        Self::new(property, Verdict::Pass, None)
    }

    pub fn fail(property: impl Into<String>, witness: W) -> Self {
        Self::new(property, Verdict::Fail, Some(witness))
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }

    pub fn failed(&self) -> bool {
        self.verdict.is_fail()
    }

    pub fn map_witness<V>(self, f: impl FnOnce(W) -> V) -> Report<V> {
        Report {
            property: self.property,
            verdict: self.verdict,
            witness: self.witness.map(f),
            notes: self.notes,
        }
    }
}

impl<W: fmt::Debug> fmt::Display for Report<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.property, self.verdict)?;
        if let Some(w) = &self.witness {
            write!(f, " witness={w:?}")?;
        }
        for n in &self.notes {
            write!(f, " [{n}]")?;
        }
        Ok(())
    }
}

/// Reason a fuel-bounded evaluation stopped early.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exhausted;
