use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Assertion {
    pub name: String,
    pub pass: bool,
}

/// What a command computes; this is the cached part.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct Outcome {
    /// Command-specific top-level fields.
    pub data: Map<String, Value>,
    pub findings: Vec<Value>,
    pub assertions: Vec<Assertion>,
    /// CSV body when the command has a tabular form.
    pub csv: Option<String>,
    /// Plain-text lines when the command has one.
    pub text: Option<String>,
}

impl Outcome {
    pub fn assert(&mut self, name: impl Into<String>, pass: bool) {
        self.assertions.push(Assertion { name: name.into(), pass });
    }

    pub fn finding(&mut self, v: Value) {
        self.findings.push(v);
    }

    pub fn set(&mut self, key: &str, v: Value) {
        self.data.insert(key.to_string(), v);
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }
}

pub fn code_version() -> String {
    format!("{}+catalog{}", env!("CARGO_PKG_VERSION"), uqsp6::uqneg::CATALOG_VERSION)
}

/// The emitted JSON: the common fields followed by the command's own.
pub fn render_json(command: &str, echo: &std::collections::BTreeMap<String, String>, o: &Outcome, timing_ms: u64) -> String {
    let mut m = Map::new();
    m.insert("command".into(), Value::String(command.into()));
    m.insert("config_echo".into(), serde_json::to_value(echo).expect("echo"));
    m.insert("code_version".into(), Value::String(code_version()));
    m.insert("findings".into(), Value::Array(o.findings.clone()));
    m.insert("assertions".into(), serde_json::to_value(&o.assertions).expect("assertions"));
    m.insert("timing_ms".into(), Value::from(timing_ms));
    for (k, v) in &o.data {
        m.insert(k.clone(), v.clone());
    }
    serde_json::to_string_pretty(&Value::Object(m)).expect("report")
}
