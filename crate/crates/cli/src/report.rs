use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Definite,
    ScopeLimited,
    Failed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Definite => 0,
            Status::ScopeLimited => 2,
            Status::Failed => 1,
        }
    }
}

/// Outcome of one command: a structured result for `--json` and the lines
/// printed otherwise.
#[derive(Debug)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub result: Value,
    pub status: Status,
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            result: Value::Null,
            status: Status::Definite,
            lines: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn line(&mut self, text: impl Into<String>) -> &mut Self {
        self.lines.push(text.into());
        self
    }

    pub fn result(&mut self, value: impl Serialize) -> &mut Self {
        self.result = serde_json::to_value(value).expect("results serialize");
        self
    }

    pub fn status(&mut self, status: Status) -> &mut Self {
        self.status = status;
        self
    }

    pub fn is_error(&self) -> bool {
        self.result.get("error").is_some()
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            #[derive(Serialize)]
            struct Envelope<'a> {
                command: &'a str,
                inputs: &'a BTreeMap<String, String>,
                result: &'a Value,
                status: Status,
            }
            let env = Envelope { command: &self.command, inputs: &self.inputs, result: &self.result, status: self.status };
            let v = serde_json::to_value(env).expect("envelope serializes");
            let mut s = serde_json::to_string_pretty(&v).expect("value prints");
            s.push('\n');
            s
        } else {
            let mut s = String::new();
            for l in &self.lines {
                s.push_str(l);
                s.push('\n');
            }
            s
        }
    }
}

/// Report for a command that failed before producing a result.
pub fn error_report(command: &str, message: &str) -> Report {
    let mut r = Report::new(command);
    r.result(serde_json::json!({ "error": message }));
    r.status(Status::Failed);
    r.line(format!("error: {message}"));
    r
}
