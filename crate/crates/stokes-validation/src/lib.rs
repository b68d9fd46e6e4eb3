//! Scoreboard for the acceptance run: each criterion is evaluated once,
//! reported on its own line, and the process fails if any criterion fails.
//!
//! The acceptance target lives in this crate rather than in `stokes-core`
//! because cargo stops running test binaries after the first failing one,
//! and this package sorts last in the workspace.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

/// A single numeric comparison inside a criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub label: String,
    pub ok: bool,
    pub detail: String,
}

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub number: u32,
    pub title: String,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    /// `[PASS] criterion 3: title (1.234 s)` plus an indented line per
    /// failing check, so a red criterion says exactly what broke.
    pub fn render(&self) -> String {
        let tag = if self.passed() { "PASS" } else { "FAIL" };
        let mut out = format!(
            "[{tag}] criterion {}: {} ({:.3} s, {} checks)",
            self.number,
            self.title,
            self.elapsed.as_secs_f64(),
            self.checks.len()
        );
        let failing: Vec<&Check> = self.checks.iter().filter(|c| !c.ok).collect();
        for c in failing.iter().take(8) {
            let _ = write!(out, "\n       - {}: {}", c.label, c.detail);
        }
        if failing.len() > 8 {
            let _ = write!(out, "\n       - ... {} more failing checks", failing.len() - 8);
        }
        out
    }
}

/// Collects the checks of one criterion while timing it.
pub struct Recorder {
    number: u32,
    title: String,
    start: Instant,
    checks: Vec<Check>,
}

impl Recorder {
    pub fn new(number: u32, title: impl Into<String>) -> Self {
        Self {
            number,
            title: title.into(),
            start: Instant::now(),
            checks: Vec::new(),
        }
    }

    pub fn check(&mut self, label: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            label: label.into(),
            ok,
            detail: detail.into(),
        });
    }

    /// `|computed - reference| <= tol`.
    pub fn close(&mut self, label: impl Into<String>, computed: f64, reference: f64, tol: f64) {
        let diff = (computed - reference).abs();
        self.check(
            label,
            diff <= tol,
            format!("computed {computed:.12e}, reference {reference:.12e}, |diff| {diff:.3e} > {tol:.1e}"),
        );
    }

    /// `|computed - reference| <= tol * |reference|`.
    pub fn rel_close(&mut self, label: impl Into<String>, computed: f64, reference: f64, tol: f64) {
        let rel = (computed - reference).abs() / reference.abs();
        self.check(
            label,
            rel <= tol,
            format!("computed {computed:.12e}, reference {reference:.12e}, rel {rel:.3e} > {tol:.1e}"),
        );
    }

    /// `value <= limit`.
    pub fn at_most(&mut self, label: impl Into<String>, value: f64, limit: f64) {
        self.check(
            label,
            value <= limit,
            format!("{value:.12e} exceeds {limit:.12e} by {:.3e}", value - limit),
        );
    }

    /// Wall-clock budget of the whole criterion so far.
    pub fn within_budget(&mut self, budget: Duration) {
        let spent = self.start.elapsed();
        self.check(
            "runtime",
            spent < budget,
            format!("{:.3} s, budget {:.0} s", spent.as_secs_f64(), budget.as_secs_f64()),
        );
    }

    pub fn finish(self) -> Verdict {
        Verdict {
            number: self.number,
            title: self.title,
            checks: self.checks,
            elapsed: self.start.elapsed(),
        }
    }
}

/// Prints the closing summary for verdicts already streamed with
/// [`Verdict::render`]; returns the process exit code.
pub fn summarize(verdicts: &[Verdict]) -> u8 {
    let failed: Vec<u32> = verdicts
        .iter()
        .filter(|v| !v.passed())
        .map(|v| v.number)
        .collect();
    println!(
        "\nacceptance: {} of {} criteria passed",
        verdicts.len() - failed.len(),
        verdicts.len()
    );
    if failed.is_empty() {
        0
    } else {
        println!("failing criteria: {failed:?}");
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_fails_when_any_check_fails() {
        let mut r = Recorder::new(1, "demo");
        r.close("a", 1.0, 1.0, 0.0);
        r.at_most("b", 2.0, 1.0);
        let v = r.finish();
        assert!(!v.passed());
        let text = v.render();
        assert!(text.starts_with("[FAIL] criterion 1: demo"));
        assert!(text.contains("- b:"));
        assert!(!text.contains("- a:"));
    }

    #[test]
    fn empty_criterion_passes_and_exit_code_tracks_failures() {
        let ok = Recorder::new(2, "ok").finish();
        assert!(ok.passed());
        assert_eq!(summarize(std::slice::from_ref(&ok)), 0);
        let mut bad = Recorder::new(3, "bad");
        bad.rel_close("x", 1.1, 1.0, 0.01);
        assert_eq!(summarize(&[ok, bad.finish()]), 1);
    }
}
