use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

/// Everything under `results` and `checks` is deterministic; timing lives outside it.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub subcommand: String,
    pub inputs: Value,
    pub results: Value,
    pub checks: Vec<Check>,
    pub pass: bool,
    pub wall_time_s: f64,
}

impl RunReport {
    pub fn new(subcommand: &str, inputs: Value) -> Self {
        RunReport {
            subcommand: subcommand.to_string(),
            inputs,
            results: json!({}),
            checks: Vec::new(),
            pass: true,
            wall_time_s: 0.0,
        }
    }

    pub fn check(&mut self, name: impl Into<String>, expected: impl Serialize, actual: impl Serialize) {
        let expected = serde_json::to_value(expected).unwrap_or(Value::Null);
        let actual = serde_json::to_value(actual).unwrap_or(Value::Null);
        let pass = expected == actual;
        self.push(name, expected, actual, pass);
    }

    /// A check whose pass condition is not plain equality (bounds, tolerances).
    pub fn check_with(&mut self, name: impl Into<String>, expected: impl Serialize, actual: impl Serialize, pass: bool) {
        let expected = serde_json::to_value(expected).unwrap_or(Value::Null);
        let actual = serde_json::to_value(actual).unwrap_or(Value::Null);
        self.push(name, expected, actual, pass);
    }

    fn push(&mut self, name: impl Into<String>, expected: Value, actual: Value, pass: bool) {
        self.pass &= pass;
        self.checks.push(Check { name: name.into(), expected, actual, pass });
    }
}
