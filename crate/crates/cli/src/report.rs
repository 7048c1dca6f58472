use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Computed,
}

/// What a command produced, before it is wrapped into a [`Report`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub status: Status,
    pub payload: Value,
}

impl Outcome {
    pub fn computed(payload: Value) -> Self {
        Outcome { status: Status::Computed, payload }
    }

    /// A check outcome. On failure, `first_failure` names the failing check.
    pub fn check(passed: bool, first_failure: &str, mut payload: Value) -> Self {
        if !passed {
            if let Value::Object(map) = &mut payload {
                map.insert("first_failure".into(), Value::String(first_failure.into()));
            }
        }
        Outcome { status: if passed { Status::Pass } else { Status::Fail }, payload }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommandEcho {
    pub verb: String,
    pub args: Map<String, Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: CommandEcho,
    pub status: Status,
    pub payload: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Value>,
}

impl Report {
    pub fn exit_code(&self) -> u8 {
        match self.status {
            Status::Fail => 1,
            Status::Pass | Status::Computed => 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain-text rendering: one `key  value` line per payload field, with
    /// arrays of objects shown one element per line.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let args: Vec<String> = self.command.args.iter().map(|(k, v)| format!("--{k} {}", scalar(v))).collect();
        out.push_str(&format!("{} {}\n", self.command.verb, args.join(" ")));
        out.push_str(&format!("{:<18}{}\n", "status", scalar(&serde_json::to_value(self.status).unwrap())));
        if let Value::Object(map) = &self.payload {
            for (key, value) in map {
                match value {
                    Value::Array(items) if items.iter().any(|v| v.is_object() || v.is_array()) => {
                        out.push_str(&format!("{key}\n"));
                        for item in items {
                            out.push_str(&format!("  {}\n", line(item)));
                        }
                    }
                    _ => out.push_str(&format!("{key:<18}{}\n", line(value))),
                }
            }
        }
        if let Some(Value::Object(t)) = &self.timing {
            for (key, value) in t {
                out.push_str(&format!("{:<18}{}\n", format!("timing.{key}"), line(value)));
            }
        }
        out
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn line(v: &Value) -> String {
    match v {
        Value::Object(map) => map
            .iter()
            .filter(|(_, v)| !v.is_null())
            .map(|(k, v)| format!("{k}={}", scalar(v)))
            .collect::<Vec<_>>()
            .join("  "),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(", "),
        other => scalar(other),
    }
}
