//! Per-property verdicts with replayable counterexample witnesses.

use serde::{Deserialize, Serialize};

/// One named set inside a witness. `members` are rendered names (atoms,
/// models, or formulas); `mask` carries the raw bits for in-process replay.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledSet {
    pub label: String,
    pub members: Vec<String>,
    pub mask: u32,
}

impl LabeledSet {
    pub fn new(label: impl Into<String>, members: Vec<String>, mask: u32) -> Self {
        LabeledSet {
            label: label.into(),
            members,
            mask,
        }
    }
}

/// Concrete evidence that a property fails. Witnesses must re-violate the
/// property when replayed; the test suite enforces this.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// The violating sets, in the order the property names them. Cycles are
    /// listed in cycle order.
    Sets { sets: Vec<LabeledSet> },
    /// Free-form evaluation trace for rule instances over formulas.
    Trace { detail: String },
}

impl Witness {
    pub fn sets(sets: Vec<LabeledSet>) -> Self {
        Witness::Sets { sets }
    }

    pub fn trace(detail: impl Into<String>) -> Self {
        Witness::Trace {
            detail: detail.into(),
        }
    }

    pub fn masks(&self) -> Vec<u32> {
        match self {
            Witness::Sets { sets } => sets.iter().map(|s| s.mask).collect(),
            Witness::Trace { .. } => Vec::new(),
        }
    }
}

/// Verdict for a single named property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl PropertyReport {
    pub fn holds(property: impl Into<String>) -> Self {
        PropertyReport {
            property: property.into(),
            holds: true,
            witness: None,
            note: None,
        }
    }

    pub fn fails(property: impl Into<String>, witness: Witness) -> Self {
        PropertyReport {
            property: property.into(),
            holds: false,
            witness: Some(witness),
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn is_failure(&self) -> bool {
        !self.holds
    }

    /// One-line human rendering, used by the CLI summary.
    pub fn summary(&self) -> String {
        let status = if self.holds { "holds" } else { "FAILS" };
        let mut line = format!("{}: {}", self.property, status);
        if let Some(w) = &self.witness {
            match w {
                Witness::Sets { sets } => {
                    let parts: Vec<String> = sets
                        .iter()
                        .map(|s| format!("{}={{{}}}", s.label, s.members.join(",")))
                        .collect();
                    line.push_str(&format!("  witness: {}", parts.join(" ")));
                }
                Witness::Trace { detail } => line.push_str(&format!("  witness: {detail}")),
            }
        }
        if let Some(n) = &self.note {
            line.push_str(&format!("  ({n})"));
        }
        line
    }
}
