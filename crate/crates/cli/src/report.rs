use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Value,
}

/// Machine-readable output of one subcommand.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: Map::new(),
            results: Map::new(),
            checks: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Serialize) {
        self.inputs.insert(key.to_string(), to_value(value));
    }

    pub fn result(&mut self, key: &str, value: impl Serialize) {
        self.results.insert(key.to_string(), to_value(value));
    }

    /// Records a check; the witness is kept whether or not it passes.
    pub fn check(&mut self, name: &str, pass: bool, witness: impl Serialize) {
        self.checks.push(Check {
            name: name.to_string(),
            pass,
            witness: to_value(witness),
        });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn render(&self, pretty: bool) -> String {
        if !pretty {
            return serde_json::to_string_pretty(self).expect("report serializes");
        }
        let mut out = format!("command: {}\n", self.command);
        for (title, map) in [("inputs", &self.inputs), ("results", &self.results)] {
            if map.is_empty() {
                continue;
            }
            out.push_str(&format!("\n{title}:\n"));
            let width = map.keys().map(String::len).max().unwrap_or(0);
            for (k, v) in map {
                out.push_str(&format!("  {k:<width$}  {}\n", compact(v)));
            }
        }
        if !self.checks.is_empty() {
            out.push_str("\nchecks:\n");
            let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
            for c in &self.checks {
                let verdict = if c.pass { "PASS" } else { "FAIL" };
                out.push_str(&format!("  {verdict}  {:<width$}  {}\n", c.name, compact(&c.witness)));
            }
        }
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("value serializes")
}
