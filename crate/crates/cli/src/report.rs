use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

/// The JSON document printed by every command.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub input_digest: String,
    pub result: Value,
    pub checks: Vec<Check>,
    pub version: &'static str,
}

impl Report {
    pub fn new(command: &str, input_digest: String, result: Value) -> Self {
        Report {
            command: command.to_string(),
            input_digest,
            result,
            checks: Vec::new(),
            version: env!("CARGO_PKG_VERSION"),
        }
    }

    pub fn check(mut self, name: impl Into<String>, passed: bool) -> Self {
        self.checks.push(Check {
            name: name.into(),
            passed,
        });
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}
