//! Structured pass/fail reports for the axiom checkers.

use serde::Serialize;
use std::fmt;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CheckItem {
    pub name: String,
    pub pass: bool,
    /// First failing instance, when there is one (lexicographically smallest).
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq)]
pub struct CheckReport {
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn new() -> Self {
        CheckReport { items: vec![] }
    }

    pub fn push(&mut self, name: &str, pass: bool, witness: Option<String>) {
        self.items.push(CheckItem {
            name: name.to_string(),
            pass,
            witness,
        });
    }

    pub fn pass(&mut self, name: &str) {
        self.push(name, true, None);
    }

    pub fn fail(&mut self, name: &str, witness: String) {
        self.push(name, false, Some(witness));
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }

    pub fn item(&self, name: &str) -> Option<&CheckItem> {
        self.items.iter().find(|i| i.name == name)
    }

    pub fn merge(&mut self, prefix: &str, other: CheckReport) {
        for item in other.items {
            self.items.push(CheckItem {
                name: format!("{}.{}", prefix, item.name),
                pass: item.pass,
                witness: item.witness,
            });
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            write!(f, "{}: {}", item.name, if item.pass { "pass" } else { "FAIL" })?;
            if let Some(w) = &item.witness {
                write!(f, " ({})", w)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
