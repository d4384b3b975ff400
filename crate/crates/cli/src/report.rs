use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::CliError;

/// One named check with its outcome and the numbers behind it.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub check: String,
    pub pass: bool,
    pub details: Value,
}

impl Verdict {
    pub fn new(check: &str, pass: bool, details: impl Serialize) -> Result<Self, CliError> {
        Ok(Self { check: check.to_string(), pass, details: serde_json::to_value(details)? })
    }
}

/// Everything a run produced. Keys are sorted, so two runs with the same
/// command and seed serialize identically apart from `wall_time_ms`.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub seed: u64,
    pub wall_time_ms: u64,
    pub pass: bool,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    pub artifacts: Vec<String>,
}

impl RunReport {
    pub fn new(command: &str, seed: u64) -> Self {
        Self {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            seed,
            wall_time_ms: 0,
            pass: true,
            verdicts: Vec::new(),
            result: None,
            artifacts: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> Result<(), CliError> {
        self.parameters.insert(key.to_string(), serde_json::to_value(value)?);
        Ok(())
    }

    pub fn push(&mut self, v: Verdict) {
        self.pass &= v.pass;
        self.verdicts.push(v);
    }

    pub fn set_result(&mut self, value: impl Serialize) -> Result<(), CliError> {
        self.result = Some(serde_json::to_value(value)?);
        Ok(())
    }

    /// Appends another report's verdicts with their names prefixed.
    pub fn absorb(&mut self, prefix: &str, other: RunReport) {
        for mut v in other.verdicts {
            v.check = format!("{prefix}.{}", v.check);
            self.push(v);
        }
        self.artifacts.extend(other.artifacts);
    }
}

pub fn write_json(path: &Path, value: &impl Serialize) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n").map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

pub fn read_json(path: &Path) -> Result<Value, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Parse { path: path.display().to_string(), source })
}
