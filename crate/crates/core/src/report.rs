//! Verification records and their text and JSON-lines renderings.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Reported only; never affects the exit status.
    Diagnostic,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Diagnostic => "DIAG",
        })
    }
}

/// One executed check. Fields of the JSON-lines rendering:
/// `id`, `status` (`pass`/`fail`/`diagnostic`), `measured`, `expected`,
/// `tolerance` (numbers or null) and `note`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub status: Status,
    pub measured: Option<f64>,
    pub expected: Option<f64>,
    pub tolerance: Option<f64>,
    pub note: String,
}

impl CheckRecord {
    /// Passes when `measured` is within `tolerance` of `expected`.
    pub fn close(id: impl Into<String>, measured: f64, expected: f64, tolerance: f64) -> Self {
        let ok = (measured - expected).abs() <= tolerance;
        Self::with_status(id, ok, Some(measured), Some(expected), Some(tolerance))
    }

    /// Passes when `measured ≤ bound`.
    pub fn at_most(id: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self::with_status(id, measured <= bound, Some(measured), None, Some(bound))
    }

    /// Passes when `measured > bound`.
    pub fn at_least(id: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self::with_status(id, measured > bound, Some(measured), None, Some(bound))
    }

    pub fn diagnostic(id: impl Into<String>, measured: f64, expected: Option<f64>) -> Self {
        CheckRecord {
            id: id.into(),
            status: Status::Diagnostic,
            measured: Some(measured),
            expected,
            tolerance: None,
            note: String::new(),
        }
    }

    /// A check that could not be evaluated.
    pub fn error(id: impl Into<String>, message: impl fmt::Display) -> Self {
        CheckRecord {
            id: id.into(),
            status: Status::Fail,
            measured: None,
            expected: None,
            tolerance: None,
            note: format!("error: {message}"),
        }
    }

    fn with_status(
        id: impl Into<String>,
        ok: bool,
        measured: Option<f64>,
        expected: Option<f64>,
        tolerance: Option<f64>,
    ) -> Self {
        CheckRecord {
            id: id.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            measured,
            expected,
            tolerance,
            note: String::new(),
        }
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub diagnostic: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct VerificationReport {
    pub records: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn push(&mut self, record: CheckRecord) {
        self.records.push(record);
    }

    pub fn extend(&mut self, records: impl IntoIterator<Item = CheckRecord>) {
        self.records.extend(records);
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for r in &self.records {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Diagnostic => s.diagnostic += 1,
            }
        }
        s
    }

    pub fn passed(&self) -> bool {
        self.summary().fail == 0
    }

    /// 0 when every assertion passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn render_text(&self) -> String {
        let width = self.records.iter().map(|r| r.id.len()).max().unwrap_or(0);
        let num = |v: Option<f64>| v.map(|x| format!("{x:.6e}")).unwrap_or_else(|| "-".into());
        let mut out = String::new();
        for r in &self.records {
            out += &format!(
                "{} {:width$}  measured={} expected={} tol={}",
                r.status,
                r.id,
                num(r.measured),
                num(r.expected),
                num(r.tolerance),
            );
            if !r.note.is_empty() {
                out += "  ";
                out += &r.note;
            }
            out.push('\n');
        }
        let s = self.summary();
        out += &format!("summary: {} passed, {} failed, {} diagnostics\n", s.pass, s.fail, s.diagnostic);
        out
    }

    /// One JSON object per record, then one `{"summary": …}` line.
    pub fn render_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out += &serde_json::to_string(r).expect("records serialize");
            out.push('\n');
        }
        out += &serde_json::json!({ "summary": self.summary() }).to_string();
        out.push('\n');
        out
    }
}
