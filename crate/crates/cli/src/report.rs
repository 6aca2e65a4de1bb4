use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

/// One structured document per command.
#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub command: String,
    pub inputs: Value,
    pub results: Vec<NamedResult>,
    pub timing_ms: u64,
}

#[derive(Debug, Serialize)]
pub struct NamedResult {
    pub name: String,
    pub value: Value,
}

impl Report {
    pub fn new(command: &str, inputs: Value) -> Self {
        Report {
            schema_version: "1",
            command: command.to_string(),
            inputs,
            results: Vec::new(),
            timing_ms: 0,
        }
    }

    pub fn push(&mut self, name: impl Into<String>, value: &impl Serialize) {
        let value = serde_json::to_value(value).expect("report values serialize");
        self.results.push(NamedResult {
            name: name.into(),
            value,
        });
    }

    pub fn push_error(&mut self, name: impl Into<String>, err: impl std::fmt::Display) {
        self.results.push(NamedResult {
            name: name.into(),
            value: json!({ "error": err.to_string() }),
        });
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} (schema {})\n", self.command, self.schema_version);
        for r in &self.results {
            let _ = writeln!(out, "{}: {}", r.name, summarize(&r.value));
        }
        if self.timing_ms > 0 {
            let _ = writeln!(out, "timing: {} ms", self.timing_ms);
        }
        out
    }
}

/// One-line rendering: check results by outcome, everything else as compact JSON.
fn summarize(v: &Value) -> String {
    match v.get("outcome").and_then(Value::as_str) {
        Some(outcome) => {
            let mut s = outcome.to_uppercase();
            if let Some(r) = v
                .get("residual")
                .and_then(Value::as_f64)
                .filter(|r| *r != 0.0)
            {
                let _ = write!(s, " residual={r:e}");
            }
            if let Some(w) = v.get("witness").filter(|w| !w.is_null()) {
                let _ = write!(s, " witness={w}");
            }
            if let Some(n) = v.get("note").and_then(Value::as_str) {
                let _ = write!(s, " ({n})");
            }
            s
        }
        None => v.to_string(),
    }
}
