//! Report assembly and rendering.

use gamma0_core::report::{Check, Status};
use serde::Serialize;

/// Bumped whenever the JSON layout changes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: &'static str,
    pub tool_version: &'static str,
    pub invocation: Vec<String>,
    pub checks: Vec<Check>,
    pub overall: Status,
}

impl Report {
    pub fn new(invocation: Vec<String>, checks: Vec<Check>) -> Report {
        let overall = if checks.iter().any(Check::failed) { Status::Fail } else { Status::Pass };
        Report {
            schema_version: SCHEMA_VERSION,
            tool: env!("CARGO_PKG_NAME"),
            tool_version: env!("CARGO_PKG_VERSION"),
            invocation,
            checks,
            overall,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.overall {
            Status::Fail => 1,
            _ => 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            out.push_str(&format!("[{tag}] {}", c.id));
            if let Some(n) = &c.numeric {
                out.push_str(&format!(" (value {:.3e}, tolerance {:.1e})", n.value, n.tolerance));
            }
            if !c.details.is_empty() {
                out.push_str(&format!(": {}", c.details));
            }
            out.push('\n');
        }
        let (p, f, s) = self.checks.iter().fold((0, 0, 0), |(p, f, s), c| match c.status {
            Status::Pass => (p + 1, f, s),
            Status::Fail => (p, f + 1, s),
            Status::Skip => (p, f, s + 1),
        });
        let overall = if self.overall == Status::Fail { "FAIL" } else { "PASS" };
        out.push_str(&format!("overall: {overall} ({p} passed, {f} failed, {s} skipped)\n"));
        out
    }
}
