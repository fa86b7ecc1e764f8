//! Command reports: a JSON machine form and an aligned text form rendered from it.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

/// Process exit status of a command.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Usage,
    CheckFailed,
    Obstruction,
    Undetermined,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Usage => 1,
            Status::CheckFailed => 2,
            Status::Obstruction => 3,
            Status::Undetermined => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub body: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str, status: Status, body: Map<String, Value>) -> Self {
        Self { command: command.to_string(), status, body }
    }

    pub fn machine(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Text form, computed from the machine form.
    pub fn human(&self) -> String {
        let value = serde_json::to_value(self).expect("reports serialize");
        let mut out = String::new();
        if let Value::Object(map) = value {
            render_object(&map, 0, &mut out);
        }
        out
    }
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(if *b { "yes".into() } else { "no".into() }),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| matches!(i, Value::String(_) | Value::Number(_) | Value::Bool(_))) => {
            Some(format!("[{}]", items.iter().filter_map(scalar_text).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render_object(map: &Map<String, Value>, indent: usize, out: &mut String) {
    let width = map.iter().filter(|(_, v)| scalar_text(v).is_some()).map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let pad = " ".repeat(indent);
    for (k, v) in map {
        if let Some(text) = scalar_text(v) {
            out.push_str(&format!("{pad}{k:<width$}  {text}\n"));
            continue;
        }
        out.push_str(&format!("{pad}{k}:\n"));
        match v {
            Value::Object(inner) => render_object(inner, indent + 2, out),
            Value::Array(items) => {
                for (idx, item) in items.iter().enumerate() {
                    match item {
                        Value::Object(inner) => {
                            if idx > 0 {
                                out.push('\n');
                            }
                            render_object(inner, indent + 2, out);
                        }
                        other => {
                            let text = scalar_text(other).unwrap_or_else(|| other.to_string());
                            out.push_str(&format!("{pad}  {text}\n"));
                        }
                    }
                }
            }
            _ => {}
        }
    }
}
