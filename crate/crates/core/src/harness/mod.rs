//! Batch verification suites and reported experiments.
//!
//! Assertion suites fail when a case fails; experiments tabulate open
//! conjectures and approximations and never fail. Every case carries the
//! graph (as parsable text) or parameters needed to re-run it on its own.

mod experiments;
mod suites;

pub use experiments::{
    experiment_join_sqrt_gap, experiment_krr_fit, experiment_pnk_conjecture, experiment_two_trees,
    two_trees,
};
pub use suites::{
    default_bounds_corpus, suite_bounds, suite_closed_forms, suite_equality_characterizations,
    suite_strategy_guarantees, suite_tree_extremality, ClosedFormLimits, StrategyLimits,
    TREE_COUNTS,
};

use serde::Serialize;
use std::fmt;
use std::time::{Duration, Instant};

/// Version of the JSON-lines report layout.
pub const JSONL_SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseRecord {
    pub id: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

impl CaseRecord {
    pub fn new(id: impl Into<String>, expected: impl fmt::Display, actual: impl fmt::Display, passed: bool) -> Self {
        CaseRecord { id: id.into(), expected: expected.to_string(), actual: actual.to_string(), passed }
    }

    /// A case whose computation failed; always a failure.
    pub fn error(id: impl Into<String>, expected: impl fmt::Display, err: impl fmt::Display) -> Self {
        CaseRecord { id: id.into(), expected: expected.to_string(), actual: format!("error: {err}"), passed: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteKind {
    /// Failed cases make the suite fail.
    Assertion,
    /// Cases record whether a conjecture or approximation held; the suite
    /// itself never fails.
    Experiment,
}

impl fmt::Display for SuiteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SuiteKind::Assertion => "assertion",
            SuiteKind::Experiment => "experiment",
        })
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: String,
    pub kind: SuiteKind,
    pub cases: Vec<CaseRecord>,
    pub wall_time: Duration,
}

impl SuiteReport {
    pub(crate) fn timed(name: &str, kind: SuiteKind, run: impl FnOnce() -> Vec<CaseRecord>) -> Self {
        let start = Instant::now();
        let cases = run();
        SuiteReport { name: name.into(), kind, cases, wall_time: start.elapsed() }
    }

    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.passed).count()
    }

    pub fn failed(&self) -> usize {
        self.cases.len() - self.passed()
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseRecord> {
        self.cases.iter().filter(|c| !c.passed)
    }

    /// True iff every case passed.
    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    /// Whether the suite counts as passing: experiments always do.
    pub fn is_ok(&self) -> bool {
        self.kind == SuiteKind::Experiment || self.all_passed()
    }

    pub fn summary(&self) -> String {
        format!(
            "{} ({}): {} passed, {} failed in {:.2} s",
            self.name,
            self.kind,
            self.passed(),
            self.failed(),
            self.wall_time.as_secs_f64()
        )
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("suite,id,expected,actual,passed\n");
        for c in &self.cases {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                self.name,
                csv_field(&c.id),
                csv_field(&c.expected),
                csv_field(&c.actual),
                c.passed
            ));
        }
        out
    }

    /// One summary object, then one object per case.
    pub fn to_jsonl(&self) -> String {
        let mut out = serde_json::json!({
            "schema": JSONL_SCHEMA,
            "suite": self.name,
            "kind": self.kind,
            "passed": self.passed(),
            "failed": self.failed(),
            "wall_ms": self.wall_time.as_millis() as u64,
        })
        .to_string();
        out.push('\n');
        for c in &self.cases {
            let mut line = serde_json::to_value(c).expect("plain record");
            line["suite"] = serde_json::Value::from(self.name.as_str());
            out.push_str(&line.to_string());
            out.push('\n');
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Text table: one row per case, then the summary line.
impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = |get: fn(&CaseRecord) -> &str, title: &str| {
            self.cases.iter().map(|c| get(c).len()).max().unwrap_or(0).max(title.len())
        };
        let wi = width(|c| &c.id, "case");
        let we = width(|c| &c.expected, "expected");
        let wa = width(|c| &c.actual, "actual");
        writeln!(f, "{:<wi$}  {:<we$}  {:<wa$}  result", "case", "expected", "actual")?;
        for c in &self.cases {
            let verdict = match (c.passed, self.kind) {
                (true, _) => "ok",
                (false, SuiteKind::Assertion) => "FAIL",
                (false, SuiteKind::Experiment) => "no",
            };
            writeln!(f, "{:<wi$}  {:<we$}  {:<wa$}  {verdict}", c.id, c.expected, c.actual)?;
        }
        write!(f, "{}", self.summary())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(kind: SuiteKind, passes: &[bool]) -> SuiteReport {
        let cases = passes
            .iter()
            .enumerate()
            .map(|(i, &p)| CaseRecord::new(format!("case {i}"), 1, if p { 1 } else { 2 }, p))
            .collect();
        SuiteReport { name: "demo".into(), kind, cases, wall_time: Duration::from_millis(5) }
    }

    #[test]
    fn counts_and_verdicts() {
        let r = report(SuiteKind::Assertion, &[true, false, true]);
        assert_eq!((r.passed(), r.failed()), (2, 1));
        assert!(!r.all_passed() && !r.is_ok());
        assert_eq!(r.failures().next().unwrap().id, "case 1");
        let e = report(SuiteKind::Experiment, &[false]);
        assert!(!e.all_passed() && e.is_ok());
        assert!(report(SuiteKind::Assertion, &[]).is_ok());
    }

    #[test]
    fn renderings() {
        let mut r = report(SuiteKind::Assertion, &[true, false]);
        r.cases[0].id = "n=2; 0-1".into();
        let csv = r.to_csv();
        assert_eq!(csv.lines().count(), 3);
        assert_eq!(csv.lines().nth(1).unwrap(), "demo,n=2; 0-1,1,1,true");
        let lines: Vec<serde_json::Value> =
            r.to_jsonl().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0]["schema"], JSONL_SCHEMA);
        assert_eq!(lines[0]["failed"], 1);
        assert_eq!(lines[2]["actual"], "2");
        let text = r.to_string();
        assert!(text.contains("FAIL"));
        assert!(text.ends_with(&r.summary()));
        assert_eq!(csv_field("a,b"), "\"a,b\"");
    }
}
