//! Verdict records emitted by every verifier.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Verified,
    Refuted,
    Undecided,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Verified
        } else {
            Verdict::Refuted
        }
    }

    pub fn is_verified(self) -> bool {
        self == Verdict::Verified
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Verified => "verified",
            Verdict::Refuted => "refuted",
            Verdict::Undecided => "undecided",
        })
    }
}

/// Evidence attached to a verdict. Values are rendered exactly as text so a
/// reader can replay them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Integer ray `λ*` (a positive multiple of a sphere point) and `V(λ*)`.
    Ray { coords: Vec<String>, value: String },
    /// Irrational root of a chart polynomial, given by its squarefree factor
    /// and an isolating interval.
    AlgebraicRoot { chart: String, poly: String, lo: String, hi: String },
    Form { label: String, value: String },
    Vector { label: String, value: String },
    Scalar { label: String, value: String },
    /// A coefficient that differs from the expected one.
    Monomial { monomial: String, got: String, expected: String },
    Note { text: String },
}

impl Witness {
    pub fn form(label: impl Into<String>, value: impl ToString) -> Self {
        Witness::Form { label: label.into(), value: value.to_string() }
    }

    pub fn vector(label: impl Into<String>, value: impl ToString) -> Self {
        Witness::Vector { label: label.into(), value: value.to_string() }
    }

    pub fn scalar(label: impl Into<String>, value: impl ToString) -> Self {
        Witness::Scalar { label: label.into(), value: value.to_string() }
    }

    pub fn note(text: impl Into<String>) -> Self {
        Witness::Note { text: text.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim: String,
    pub verdict: Verdict,
    pub method: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<String>,
}

impl Certificate {
    pub fn new(claim: impl Into<String>, verdict: Verdict, method: impl Into<String>) -> Self {
        Certificate {
            claim: claim.into(),
            verdict,
            method: method.into(),
            witnesses: Vec::new(),
            trace: Vec::new(),
        }
    }

    pub fn with_witness(mut self, w: Witness) -> Self {
        self.witnesses.push(w);
        self
    }

    pub fn with_trace(mut self, line: impl Into<String>) -> Self {
        self.trace.push(line.into());
        self
    }

    pub fn is_verified(&self) -> bool {
        self.verdict.is_verified()
    }

    /// First witness with the given label, if any.
    pub fn witness(&self, label: &str) -> Option<&Witness> {
        self.witnesses.iter().find(|w| match w {
            Witness::Form { label: l, .. }
            | Witness::Vector { label: l, .. }
            | Witness::Scalar { label: l, .. } => l == label,
            _ => false,
        })
    }
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Witness::Ray { coords, value } => write!(f, "V({}) = {value}", coords.join(", ")),
            Witness::AlgebraicRoot { chart, poly, lo, hi } => write!(f, "{chart}: root of {poly} in [{lo}, {hi}]"),
            Witness::Form { label, value } | Witness::Vector { label, value } | Witness::Scalar { label, value } => {
                write!(f, "{label} = {value}")
            }
            Witness::Monomial { monomial, got, expected } => write!(f, "{monomial}: got {got}, expected {expected}"),
            Witness::Note { text } => f.write_str(text),
        }
    }
}
