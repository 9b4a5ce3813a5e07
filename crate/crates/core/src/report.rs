//! Machine-readable suite results. JSON output goes through
//! `serde_json::Value`, whose maps are ordered, so keys come out sorted and
//! the bytes depend only on the results.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::error::Error;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Warn,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Warn => "WARN",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    pub witnesses: Vec<String>,
    pub anchor: String,
    pub summary: Vec<String>,
    pub details: Value,
    pub guard_exceeded: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

/// Builds a [`SuiteResult`]; parameters are added with [`SuiteBuilder::param`].
pub struct SuiteBuilder {
    suite: String,
    anchor: String,
    params: BTreeMap<String, Value>,
}

impl SuiteBuilder {
    pub fn new(suite: &str, anchor: &str) -> Self {
        SuiteBuilder {
            suite: suite.to_string(),
            anchor: anchor.to_string(),
            params: BTreeMap::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params
            .insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
        self
    }

    /// `warnings` turn a pass into `warn`. A failure without witnesses gets
    /// a generic one so that every failure is explained.
    pub fn finish(
        self,
        pass: bool,
        mut witnesses: Vec<String>,
        warnings: Vec<String>,
        summary: Vec<String>,
        details: impl Serialize,
    ) -> SuiteResult {
        let status = match (pass, warnings.is_empty()) {
            (false, _) => Status::Fail,
            (true, true) => Status::Pass,
            (true, false) => Status::Warn,
        };
        if status == Status::Fail && witnesses.is_empty() {
            witnesses.push("check reported failure; see details".into());
        }
        witnesses.extend(warnings);
        SuiteResult {
            suite: self.suite,
            params: self.params,
            status,
            witnesses,
            anchor: self.anchor,
            summary,
            details: serde_json::to_value(details).unwrap_or(Value::Null),
            guard_exceeded: false,
            timing_ms: None,
        }
    }

    pub fn error(self, e: &Error) -> SuiteResult {
        let guard = matches!(e, Error::GuardExceeded { .. });
        let mut r = self.finish(false, vec![e.to_string()], Vec::new(), Vec::new(), Value::Null);
        r.guard_exceeded = guard;
        r
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub suites: Vec<SuiteResult>,
}

impl Report {
    pub fn new(suites: Vec<SuiteResult>) -> Self {
        Report { schema: SCHEMA, suites }
    }

    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report is serializable");
        let mut s = serde_json::to_string_pretty(&value).expect("value is serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.suites {
            let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
            let _ = write!(out, "{} {}", r.status.label(), r.suite);
            if !params.is_empty() {
                let _ = write!(out, " [{}]", params.join(" "));
            }
            if let Some(ms) = r.timing_ms {
                let _ = write!(out, " ({ms} ms)");
            }
            out.push('\n');
            for line in &r.summary {
                let _ = writeln!(out, "{line}");
            }
            for w in &r.witnesses {
                let _ = writeln!(out, "  ! {w}");
            }
        }
        out
    }

    /// 3 if a guard was exceeded, 2 on any failure, 0 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.suites.iter().any(|r| r.guard_exceeded) {
            3
        } else if self.suites.iter().any(|r| r.status == Status::Fail) {
            2
        } else {
            0
        }
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted_and_failures_explained() {
        let r = SuiteBuilder::new("demo", "a claim")
            .param("z", 1)
            .param("a", "x")
            .finish(false, vec![], vec![], vec![], serde_json::json!({"b": 1, "a": 2}));
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.witnesses.len(), 1);
        let json = Report::new(vec![r]).to_json();
        let a = json.find("\"a\": \"x\"").unwrap();
        let z = json.find("\"z\": 1").unwrap();
        assert!(a < z);
        assert!(json.contains("\"schema\": 1"));
        assert!(!json.contains("timing_ms"));
    }

    #[test]
    fn exit_codes() {
        let ok = SuiteBuilder::new("a", "").finish(true, vec![], vec!["note".into()], vec![], Value::Null);
        assert_eq!(ok.status, Status::Warn);
        assert_eq!(Report::new(vec![ok.clone()]).exit_code(), 0);
        let guard = SuiteBuilder::new("b", "").error(&Error::GuardExceeded {
            what: "x".into(),
            estimate: 2,
            limit: 1,
        });
        assert_eq!(Report::new(vec![ok.clone(), guard]).exit_code(), 3);
        let bad = SuiteBuilder::new("c", "").finish(false, vec!["w".into()], vec![], vec![], Value::Null);
        assert_eq!(Report::new(vec![ok, bad]).exit_code(), 2);
    }
}
