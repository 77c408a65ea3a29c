//! Machine-readable certificates: for identical inputs the JSON output is
//! byte-identical across runs and thread counts.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::report::{CheckItem, CheckReport};

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Certificate {
    /// The invoking command, e.g. `check --what quadratic`.
    pub command: String,
    /// SHA-256 of the raw input file bytes.
    pub input_sha256: String,
    /// Ordered check results.
    pub checks: Vec<CheckItem>,
    /// Library version that produced the certificate.
    pub version: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    let digest = h.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

impl Certificate {
    pub fn new(command: impl Into<String>, input: &[u8], report: &CheckReport) -> Self {
        Certificate {
            command: command.into(),
            input_sha256: sha256_hex(input),
            checks: report.items.clone(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialization")
    }
}
