use serde::{Deserialize, Serialize};

use witt_core::report::Failure;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub level: String,
    pub passed: bool,
    pub failures: Vec<Failure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentRecord {
    pub kind: String,
    pub text: String,
}

/// Machine-readable record of one invocation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub status: String,
    pub exit_code: i32,
    pub lines: Vec<String>,
    pub checks: Vec<CheckRecord>,
    pub documents: Vec<DocumentRecord>,
    pub error: Option<String>,
    /// Wall time; the only field that differs between identical runs.
    pub elapsed_ms: u64,
}

/// What a command produced before it is turned into a report.
#[derive(Default)]
pub struct Outcome {
    pub lines: Vec<String>,
    pub checks: Vec<CheckRecord>,
    pub documents: Vec<DocumentRecord>,
    pub failed: bool,
}

impl Outcome {
    pub fn line(&mut self, s: impl Into<String>) {
        let s: String = s.into();
        self.lines.push(s.trim_end().to_string());
    }

    pub fn check<L: std::fmt::Debug>(&mut self, name: &str, level: L, passed: bool, failures: Vec<Failure>) {
        self.line(format!("{name}: {} (level {level:?})", if passed { "pass" } else { "FAIL" }));
        for f in &failures {
            self.line(format!("  {f}"));
        }
        self.failed |= !passed;
        self.checks.push(CheckRecord { name: name.to_string(), level: format!("{level:?}"), passed, failures });
    }

    pub fn document(&mut self, kind: &str, text: String) {
        self.documents.push(DocumentRecord { kind: kind.to_string(), text });
    }
}
