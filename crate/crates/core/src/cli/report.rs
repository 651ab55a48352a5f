//! Verification reports and their text and JSON-lines renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Where the expected value of a check comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    /// A value displayed in the published computation.
    Printed,
    /// A closed form or an elementary identity.
    ClosedForm,
    /// An independent computation by a different route.
    Oracle,
}

impl Source {
    pub fn tag(self) -> &'static str {
        match self {
            Source::Printed => "printed",
            Source::ClosedForm => "closed-form",
            Source::Oracle => "oracle",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    /// What is being checked, in words.
    pub anchor: String,
    pub source: Source,
    pub expected: String,
    pub computed: String,
    pub status: Status,
}

impl Check {
    /// Passes when the two canonical renderings agree.
    pub fn compare(id: impl Into<String>, anchor: &str, source: Source, expected: String, computed: String) -> Check {
        let status = if expected == computed { Status::Pass } else { Status::Fail };
        Check { id: id.into(), anchor: anchor.into(), source, expected, computed, status }
    }

    pub fn flag(
        id: impl Into<String>,
        anchor: &str,
        source: Source,
        ok: bool,
        expected: impl Into<String>,
        computed: impl Into<String>,
    ) -> Check {
        let status = if ok { Status::Pass } else { Status::Fail };
        Check { id: id.into(), anchor: anchor.into(), source, expected: expected.into(), computed: computed.into(), status }
    }

    pub fn skipped(id: impl Into<String>, anchor: &str, reason: &str) -> Check {
        Check {
            id: id.into(),
            anchor: anchor.into(),
            source: Source::ClosedForm,
            expected: "not evaluated".into(),
            computed: reason.into(),
            status: Status::Skipped,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    /// Group name or parameter, e.g. `E6` or `order=12`.
    pub context: String,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn new(suite: &str, context: impl Into<String>) -> Report {
        Report { suite: suite.into(), context: context.into(), checks: Vec::new(), elapsed_ms: None }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }

    pub fn passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }
}

/// Sort key: suite, then groups in family order, then other contexts.
fn sort_key(r: &Report) -> (String, u8, u32, String) {
    use crate::groups::Family;
    let (rank, n) = match Family::parse(&r.context) {
        Ok(Family::A(n)) => (0, n),
        Ok(Family::D(n)) => (1, n),
        Ok(Family::E6) => (2, 6),
        Ok(Family::E7) => (2, 7),
        Ok(Family::E8) => (2, 8),
        Err(_) => (3, 0),
    };
    (r.suite.clone(), rank, n, r.context.clone())
}

pub fn sort_reports(reports: &mut [Report]) {
    reports.sort_by_cached_key(sort_key);
}

pub fn emit_jsonl(reports: &[Report]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&serde_json::to_string(r).expect("reports serialize"));
        out.push('\n');
    }
    out
}

pub fn parse_jsonl(text: &str) -> Result<Vec<Report>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| Error::Parse { line: i + 1, msg: e.to_string() }))
        .collect()
}

pub fn emit_text(reports: &[Report]) -> String {
    let mut out = String::new();
    for r in reports {
        let head = if r.passed() { "PASS" } else { "FAIL" };
        let _ = write!(
            out,
            "{head} {} {}: {} passed, {} failed, {} skipped",
            r.suite,
            r.context,
            r.count(Status::Pass),
            r.count(Status::Fail),
            r.count(Status::Skipped)
        );
        if let Some(ms) = r.elapsed_ms {
            let _ = write!(out, " ({ms} ms)");
        }
        out.push('\n');
        for c in &r.checks {
            let st = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            let _ = writeln!(out, "  {st} {} [{}] {}", c.id, c.source.tag(), c.anchor);
            if c.status == Status::Pass && c.expected == c.computed {
                let _ = writeln!(out, "       value    {}", c.expected);
            } else {
                let _ = writeln!(out, "       expected {}", c.expected);
                let _ = writeln!(out, "       computed {}", c.computed);
            }
        }
    }
    let total = reports.len();
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let _ = writeln!(out, "{} of {total} reports passed", total - failed);
    out
}
