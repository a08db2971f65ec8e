use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub witness: Value,
}

/// Record of one run: the echoed input, each check with its witness, and a
/// verdict that passes exactly when every check does.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input: Value,
    pub checks: Vec<CheckResult>,
    pub verdict: Status,
}

impl Certificate {
    pub fn new(command: &str, input: Value) -> Self {
        Certificate {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            input,
            checks: Vec::new(),
            verdict: Status::Pass,
        }
    }

    pub fn check(&mut self, name: &str, ok: bool, witness: impl Serialize) {
        let witness = serde_json::to_value(witness).expect("witness serializes");
        self.checks.push(CheckResult {
            name: name.to_string(),
            status: Status::from_bool(ok),
            witness,
        });
        self.verdict = Status::from_bool(self.checks.iter().all(|c| c.status == Status::Pass));
    }

    pub fn passed(&self) -> bool {
        self.verdict == Status::Pass
    }

    pub fn failing(&self) -> Option<&str> {
        self.checks
            .iter()
            .find(|c| c.status == Status::Fail)
            .map(|c| c.name.as_str())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}: {}", self.tool, self.version, self.command);
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
            };
            let _ = writeln!(s, "  [{status}] {}", c.name);
        }
        let _ = writeln!(
            s,
            "verdict: {}",
            if self.passed() { "pass" } else { "fail" }
        );
        s
    }
}
