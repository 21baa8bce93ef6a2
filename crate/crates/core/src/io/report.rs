//! JSON report produced by every command.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::certificate::Certificate;
use crate::error::Error;
use crate::io::frame_file::{serialize, FrameDoc};

pub const SCHEMA: &str = "cosym-report/1";
/// `dα(X,Y) = Xα(Y) - Yα(X) - α([X,Y])` with the determinant wedge.
pub const CONVENTION: &str = "d-no-half/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub convention: String,
    pub command: String,
    /// Input names in order.
    pub inputs: Vec<String>,
    /// SHA-256 over the command, options and canonical input text.
    pub input_digest: String,
    pub options: BTreeMap<String, String>,
    pub certificates: Vec<Certificate>,
    /// Computed quantities keyed by name; polynomials in canonical order.
    pub values: BTreeMap<String, String>,
    /// Seconds since the epoch. Not part of the digest.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl Report {
    pub fn new(command: &str, docs: &[FrameDoc], options: BTreeMap<String, String>) -> Self {
        let mut h = Sha256::new();
        h.update(command.as_bytes());
        h.update(b"\n");
        for (k, v) in &options {
            h.update(format!("{k}={v}\n").as_bytes());
        }
        for d in docs {
            h.update(b"---\n");
            h.update(serialize(d).as_bytes());
        }
        Report {
            schema: SCHEMA.into(),
            convention: CONVENTION.into(),
            command: command.into(),
            inputs: docs.iter().map(|d| d.name.clone().unwrap_or_else(|| "-".into())).collect(),
            input_digest: hex::encode(h.finalize()),
            options,
            certificates: Vec::new(),
            values: BTreeMap::new(),
            timestamp: None,
        }
    }

    pub fn push(&mut self, c: Certificate) {
        self.certificates.push(c);
    }

    pub fn value(&mut self, key: impl Into<String>, v: impl ToString) {
        self.values.insert(key.into(), v.to_string());
    }

    pub fn all_verified(&self) -> bool {
        self.certificates.iter().all(Certificate::is_verified)
    }

    pub fn exit_code(&self) -> ExitCode {
        if self.all_verified() {
            ExitCode::Verified
        } else {
            ExitCode::NotVerified
        }
    }

    pub fn stamp(&mut self) {
        self.timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .ok()
            .map(|d| d.as_secs());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain-text summary for terminals.
    pub fn text(&self) -> String {
        let mut out = String::new();
        for c in &self.certificates {
            out.push_str(&format!("{:<10} {} [{}]\n", c.verdict.to_string().to_uppercase(), c.claim, c.method));
        }
        for (k, v) in &self.values {
            out.push_str(&format!("  {k} = {v}\n"));
        }
        out
    }
}

/// Process exit codes. `Verified` iff every certificate is verified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitCode {
    Verified = 0,
    NotVerified = 1,
    /// Unknown command or bad flags.
    Usage = 2,
    /// Unreadable or malformed input, unknown names, ring mismatch.
    Input = 3,
    Dimension = 4,
    /// Input is well-formed but not the required kind of structure.
    Precondition = 5,
    /// An internal cross-check disagreed.
    Internal = 6,
}

impl ExitCode {
    pub fn for_error(e: &Error) -> Self {
        match e {
            Error::Parse { .. } | Error::RingMismatch(_) | Error::UnknownName(_) => ExitCode::Input,
            Error::Dimension(_) | Error::DegreeOutOfRange { .. } | Error::ArityMismatch { .. } => ExitCode::Dimension,
            Error::Inconsistent(_) => ExitCode::Internal,
            _ => ExitCode::Precondition,
        }
    }

    pub fn code(self) -> i32 {
        self as i32
    }
}
