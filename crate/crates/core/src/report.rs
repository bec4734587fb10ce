//! Machine- and human-readable run reports.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

/// Process exit codes used by the command-line tool.
pub mod exit {
    pub const OK: i32 = 0;
    pub const CHECK_FAILED: i32 = 1;
    pub const ERROR: i32 = 2;
    pub const NO: i32 = 10;
    pub const INCONCLUSIVE: i32 = 20;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StageStatus {
    /// A check that held.
    Pass,
    /// A check that failed.
    Fail,
    /// A stage that computes something without checking it.
    Done,
    /// A stage that could not run.
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stage {
    pub name: String,
    pub status: StageStatus,
    pub detail: Value,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub schema_version: u32,
    pub command: String,
    pub stages: Vec<Stage>,
    pub exit_status: i32,
}

impl PipelineReport {
    pub fn new(command: impl Into<String>) -> Self {
        PipelineReport { schema_version: SCHEMA_VERSION, command: command.into(), stages: Vec::new(), exit_status: 0 }
    }

    /// Runs `f`, records its status and detail with the elapsed time, and
    /// passes its result through.
    pub fn stage<T>(&mut self, name: &str, f: impl FnOnce() -> (StageStatus, Value, T)) -> T {
        let start = Instant::now();
        let (status, detail, out) = f();
        let elapsed_ms = start.elapsed().as_secs_f64() * 1000.0;
        self.stages.push(Stage { name: name.into(), status, detail, elapsed_ms });
        out
    }

    pub fn record(&mut self, name: &str, status: StageStatus, detail: Value) {
        self.stages.push(Stage { name: name.into(), status, detail, elapsed_ms: 0.0 });
    }

    pub fn all_checks_passed(&self) -> bool {
        self.stages.iter().all(|s| matches!(s.status, StageStatus::Pass | StageStatus::Done))
    }

    /// Sets the exit status. A failed check or errored stage overrides any
    /// verdict code.
    pub fn finish(&mut self, verdict: i32) -> i32 {
        self.exit_status = if self.stages.iter().any(|s| s.status == StageStatus::Error) {
            exit::ERROR
        } else if self.stages.iter().any(|s| s.status == StageStatus::Fail) {
            exit::CHECK_FAILED
        } else {
            verdict
        };
        self.exit_status
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// One line per stage, rendered from the same data as the JSON form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.stages {
            let status = match s.status {
                StageStatus::Pass => "pass",
                StageStatus::Fail => "FAIL",
                StageStatus::Done => "done",
                StageStatus::Error => "ERROR",
            };
            writeln!(out, "{:<5} {:<24} {:>9.3} ms  {}", status, s.name, s.elapsed_ms, s.detail).unwrap();
        }
        writeln!(out, "exit {}", self.exit_status).unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn exit_status_rules() {
        let mut r = PipelineReport::new("verify");
        r.record("a", StageStatus::Pass, json!(null));
        assert_eq!(r.finish(exit::NO), exit::NO);
        r.record("b", StageStatus::Fail, json!({"uncovered": ["u v"]}));
        assert_eq!(r.finish(exit::OK), exit::CHECK_FAILED);
        assert!(!r.all_checks_passed());
        r.record("c", StageStatus::Error, json!("boom"));
        assert_eq!(r.finish(exit::OK), exit::ERROR);
    }

    #[test]
    fn json_and_text_agree() {
        let mut r = PipelineReport::new("square");
        let n = r.stage("square", || (StageStatus::Done, json!({"n": 5}), 5));
        assert_eq!(n, 5);
        r.finish(exit::OK);
        let back = PipelineReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["schema_version"], 1);
        let text = r.to_text();
        assert!(text.starts_with("done  square"));
        assert!(text.contains(r#"{"n":5}"#));
        assert!(text.ends_with("exit 0\n"));
    }
}
