use std::fmt::Write as _;

use serde::Serialize;

use crate::config::{OutputFormat, SuiteConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Adjudicated,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Adjudicated => "adjudicated",
        }
    }
}

/// One verification record. For equality checks `tolerance` bounds
/// `|computed - reference|`; for inequality checks it bounds
/// `computed - reference` from above.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub check_id: String,
    pub status: Status,
    pub computed: f64,
    pub reference: f64,
    pub tolerance: f64,
    pub elapsed_ms: f64,
    pub note: String,
}

impl CheckResult {
    fn new(check_id: String, status: Status, computed: f64, reference: f64, tolerance: f64) -> Self {
        Self {
            check_id,
            status,
            computed,
            reference,
            tolerance,
            elapsed_ms: 0.0,
            note: String::new(),
        }
    }

    /// Passes when `|computed - reference| <= tolerance`.
    pub fn equality(id: impl Into<String>, computed: f64, reference: f64, tolerance: f64) -> Self {
        let ok = (computed - reference).abs() <= tolerance;
        Self::new(id.into(), pass_if(ok), computed, reference, tolerance)
    }

    /// Passes when `|computed - reference| <= rel * |reference|`; the stored
    /// tolerance is the resulting absolute one.
    pub fn relative(id: impl Into<String>, computed: f64, reference: f64, rel: f64) -> Self {
        Self::equality(id, computed, reference, rel * reference.abs())
    }

    /// Passes when `computed <= reference + tolerance`.
    pub fn at_most(id: impl Into<String>, computed: f64, reference: f64, tolerance: f64) -> Self {
        let ok = computed <= reference + tolerance;
        Self::new(id.into(), pass_if(ok), computed, reference, tolerance)
    }

    /// Records both values without a verdict.
    pub fn adjudicated(id: impl Into<String>, computed: f64, reference: f64) -> Self {
        Self::new(id.into(), Status::Adjudicated, computed, reference, 0.0)
    }

    /// A check that could not be evaluated.
    pub fn error(id: impl Into<String>, message: impl std::fmt::Display) -> Self {
        Self::new(id.into(), Status::Fail, f64::NAN, f64::NAN, 0.0).with_note(message.to_string())
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    pub fn with_elapsed_ms(mut self, ms: f64) -> Self {
        self.elapsed_ms = ms;
        self
    }
}

fn pass_if(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn any_failed(&self) -> bool {
        self.results.iter().any(|r| r.status == Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.results.iter().filter(|r| r.status == status).count()
    }

    /// 0 when every check passed or was adjudicated, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.any_failed())
    }
}

#[derive(Serialize)]
struct JsonReport<'a> {
    version: &'static str,
    config: &'a SuiteConfig,
    results: &'a [CheckResult],
}

pub const CSV_HEADER: [&str; 7] = [
    "check_id",
    "status",
    "computed",
    "reference",
    "tolerance",
    "elapsed_ms",
    "note",
];

/// Seventeen significant digits: enough to round-trip any `f64`.
fn real(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

/// Renders a report. `config` is embedded in the JSON form only.
pub fn emit_report(report: &Report, format: OutputFormat, config: &SuiteConfig) -> String {
    match format {
        OutputFormat::Json => {
            let doc = JsonReport {
                version: env!("CARGO_PKG_VERSION"),
                config,
                results: &report.results,
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER).expect("in-memory write");
            for r in &report.results {
                w.write_record([
                    r.check_id.as_str(),
                    r.status.as_str(),
                    &real(r.computed),
                    &real(r.reference),
                    &real(r.tolerance),
                    &real(r.elapsed_ms),
                    r.note.as_str(),
                ])
                .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
        }
        OutputFormat::Text => text_table(report),
    }
}

fn text_table(report: &Report) -> String {
    let rows: Vec<[String; 6]> = report
        .results
        .iter()
        .map(|r| {
            [
                r.check_id.clone(),
                r.status.as_str().to_owned(),
                format!("{:.9e}", r.computed),
                format!("{:.9e}", r.reference),
                format!("{:.2e}", r.tolerance),
                r.note.clone(),
            ]
        })
        .collect();
    let header = ["check_id", "status", "computed", "reference", "tolerance", "note"];
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: [&str; 6]| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
            if i == 5 {
                s.push_str(cell);
            } else if (2..5).contains(&i) {
                let _ = write!(s, "{cell:>w$}  ");
            } else {
                let _ = write!(s, "{cell:<w$}  ");
            }
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(header);
    for row in &rows {
        line(std::array::from_fn(|i| row[i].as_str()));
    }
    let _ = writeln!(
        out,
        "\n{} checks: {} pass, {} fail, {} adjudicated",
        report.results.len(),
        report.count(Status::Pass),
        report.count(Status::Fail),
        report.count(Status::Adjudicated)
    );
    out
}
