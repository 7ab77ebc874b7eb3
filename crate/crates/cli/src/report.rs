use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub detail: Value,
}

#[derive(Debug, Default)]
pub struct Report {
    pub command: String,
    pub checks: Vec<Check>,
    pub data: Map<String, Value>,
    pub summary: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            ..Default::default()
        }
    }

    pub fn check(&mut self, id: &str, ok: bool, detail: Value) {
        self.checks.push(Check {
            id: id.to_string(),
            status: Status::from_bool(ok),
            detail,
        });
    }

    pub fn skip(&mut self, id: &str, reason: &str) {
        self.checks.push(Check {
            id: id.to_string(),
            status: Status::Skipped,
            detail: json!({ "reason": reason }),
        });
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.data.insert(key.to_string(), value);
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.summary.push(s.into());
    }

    /// Keeps only the listed checks; a listed check that was skipped counts
    /// as failed.
    pub fn restrict(&mut self, wanted: &[String]) {
        self.checks.retain(|c| wanted.contains(&c.id));
        for c in &mut self.checks {
            if c.status == Status::Skipped {
                c.status = Status::Fail;
            }
        }
        for w in wanted {
            if !self.checks.iter().any(|c| &c.id == w) {
                self.checks.push(Check {
                    id: w.clone(),
                    status: Status::Fail,
                    detail: json!({ "reason": "unknown check" }),
                });
            }
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn to_json(&self) -> String {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({ "id": c.id, "status": c.status.as_str(), "detail": c.detail }))
            .collect();
        let v = json!({
            "command": self.command,
            "all_pass": self.all_pass(),
            "checks": checks,
            "data": Value::Object(self.data.clone()),
        });
        let mut s = serde_json::to_string_pretty(&v).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.command);
        for l in &self.summary {
            out.push_str(&format!("  {l}\n"));
        }
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            out.push_str(&format!("{tag:<5}{}\n", c.id));
        }
        out
    }
}
