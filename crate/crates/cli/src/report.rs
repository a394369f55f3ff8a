//! Versioned JSON envelope printed by every subcommand.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

/// Bumped whenever a field is renamed, removed or changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Computed by exhaustive search in this run.
    Search,
    /// Read from the table of published closed forms.
    Catalog,
    /// Certified by building an explicit coloring and checking it.
    Construction,
}

#[derive(Clone, Debug, Serialize)]
pub struct Output {
    pub name: String,
    pub value: Value,
    pub provenance: Provenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Arrows,
    Counterexample,
    Indeterminate,
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Arrows | Status::Pass => 0,
            Status::Counterexample | Status::Fail | Status::Error => 1,
            Status::Indeterminate => 2,
        }
    }
}

/// Exit code for malformed invocations and unparsable inputs.
pub const USAGE_EXIT: u8 = 3;

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub argv: Vec<String>,
    pub inputs: BTreeMap<String, String>,
    pub status: Status,
    pub exit_code: u8,
    pub outputs: Vec<Output>,
    pub stats: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub files: Vec<String>,
}

impl RunReport {
    pub fn new(command: &str, inputs: &[(&str, String)]) -> Self {
        RunReport {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            argv: std::env::args().skip(1).collect(),
            inputs: inputs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            status: Status::Pass,
            exit_code: 0,
            outputs: Vec::new(),
            stats: Value::Object(Default::default()),
            error: None,
            files: Vec::new(),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, value: impl Serialize, provenance: Provenance, source: Option<&str>) {
        self.outputs.push(Output {
            name: name.into(),
            value: serde_json::to_value(value).expect("output serializes"),
            provenance,
            source: source.map(str::to_string),
        });
    }

    pub fn finish(mut self, status: Status) -> Self {
        self.status = status;
        self.exit_code = status.exit_code();
        self
    }

    pub fn fail(mut self, err: impl std::fmt::Display) -> Self {
        self.error = Some(err.to_string());
        self.finish(Status::Error)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
