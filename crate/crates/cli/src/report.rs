use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    HeuristicPass,
    Inconclusive,
}

impl Status {
    pub fn from_ok(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::HeuristicPass => "heuristic-pass",
            Status::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub summary: String,
    pub payload: Value,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        status: Status,
        summary: impl Into<String>,
        payload: impl Serialize,
    ) -> Self {
        Check {
            name: name.into(),
            status,
            summary: summary.into(),
            payload: serde_json::to_value(payload).unwrap_or(Value::Null),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: Value,
    pub checks: Vec<Check>,
    pub wall_time_s: f64,
}

impl Report {
    pub fn new(command: &str, config: impl Serialize) -> Self {
        Report {
            schema: SCHEMA,
            tool: "polaris",
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            config: serde_json::to_value(config).unwrap_or(Value::Null),
            checks: Vec::new(),
            wall_time_s: 0.0,
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    /// 1 if any check failed, 3 if every check is inconclusive, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            1
        } else if self.checks.iter().all(|c| c.status == Status::Inconclusive) {
            3
        } else {
            0
        }
    }

    /// The report as JSON with the wall time zeroed, for comparisons.
    pub fn deterministic_json(&self) -> String {
        let mut r = self.clone();
        r.wall_time_s = 0.0;
        serde_json::to_string_pretty(&r).expect("serializable")
    }

    pub fn summary_lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| format!("{:<14} {}  {}", c.status.label(), c.name, c.summary))
            .collect()
    }

    /// One CSV row per check: command, check, status, summary.
    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["command", "check", "status", "summary"])?;
        for c in &self.checks {
            w.write_record([self.command.as_str(), &c.name, c.status.label(), &c.summary])?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("utf-8 input"))
    }
}
