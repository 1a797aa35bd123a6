//! Scenario reports: a stable key-value text layout with one block per check.

use std::fmt::{Display, Write as _};
use std::time::{Duration, Instant};

use coxquot::data::DataFile;
use coxquot::Fact;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }

    fn from(pass: bool) -> Self {
        if pass {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub id: String,
    pub status: Status,
    pub measured: String,
    pub expected: String,
    /// `published`, `trivial` or `derived`.
    pub oracle: String,
    pub claim: String,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub scenario: String,
    pub checks: Vec<CheckLine>,
    pub values: Vec<(String, String)>,
    pub inputs: Vec<(String, String)>,
    pub notes: Vec<String>,
    /// Wall-clock per step; left out of the text unless asked for.
    pub timings: Vec<(String, Duration)>,
}

impl Report {
    pub fn new(scenario: &str) -> Self {
        Report { scenario: scenario.to_string(), ..Default::default() }
    }

    pub fn input(&mut self, f: &DataFile) {
        if !self.inputs.iter().any(|(p, _)| p == &f.path) {
            self.inputs.push((f.path.clone(), f.sha256.clone()));
        }
    }

    pub fn value(&mut self, key: &str, v: impl Display) {
        self.values.push((key.to_string(), v.to_string()));
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Compare a measured value with a manifest fact by its text form.
    pub fn fact(&mut self, fact: &Fact, measured: impl Display) -> bool {
        let measured = measured.to_string();
        let pass = measured == fact.value;
        self.checks.push(CheckLine {
            id: fact.id.clone(),
            status: Status::from(pass),
            measured,
            expected: fact.value.clone(),
            oracle: fact.oracle.as_str().to_string(),
            claim: fact.claim.clone(),
        });
        pass
    }

    pub fn check(
        &mut self,
        id: &str,
        pass: bool,
        measured: impl Display,
        expected: impl Display,
        oracle: &str,
        claim: &str,
    ) -> bool {
        self.checks.push(CheckLine {
            id: id.to_string(),
            status: Status::from(pass),
            measured: measured.to_string(),
            expected: expected.to_string(),
            oracle: oracle.to_string(),
            claim: claim.to_string(),
        });
        pass
    }

    pub fn skip(&mut self, id: &str, expected: impl Display, oracle: &str, claim: &str) {
        self.checks.push(CheckLine {
            id: id.to_string(),
            status: Status::Skipped,
            measured: "-".into(),
            expected: expected.to_string(),
            oracle: oracle.to_string(),
            claim: claim.to_string(),
        });
    }

    pub fn timed<T>(&mut self, step: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let r = f();
        self.timings.push((step.to_string(), t.elapsed()));
        r
    }

    pub fn status(&self, id: &str) -> Option<Status> {
        self.checks.iter().find(|c| c.id == id).map(|c| c.status)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn elapsed(&self) -> Duration {
        self.timings.iter().map(|(_, d)| *d).sum()
    }

    pub fn summary(&self) -> String {
        let n = |s: Status| self.checks.iter().filter(|c| c.status == s).count();
        format!(
            "{} {} ({} pass, {} fail, {} skipped)",
            self.scenario,
            if self.passed() { "PASS" } else { "FAIL" },
            n(Status::Pass),
            n(Status::Fail),
            n(Status::Skipped)
        )
    }

    pub fn to_text(&self, timings: bool) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "scenario: {}", self.scenario);
        let _ = writeln!(s, "version: {VERSION}");
        if !self.inputs.is_empty() {
            let _ = writeln!(s, "inputs:");
            for (p, h) in &self.inputs {
                let _ = writeln!(s, "  - {p} sha256={h}");
            }
        }
        if !self.values.is_empty() {
            let _ = writeln!(s, "values:");
            for (k, v) in &self.values {
                let _ = writeln!(s, "  {k}: {v}");
            }
        }
        let _ = writeln!(s, "checks:");
        for c in &self.checks {
            let _ = writeln!(s, "  - id: {}", c.id);
            let _ = writeln!(s, "    status: {}", c.status.as_str());
            let _ = writeln!(s, "    measured: {}", c.measured);
            let _ = writeln!(s, "    expected: {}", c.expected);
            let _ = writeln!(s, "    oracle: {}", c.oracle);
            let _ = writeln!(s, "    claim: {}", c.claim);
        }
        if !self.notes.is_empty() {
            let _ = writeln!(s, "notes:");
            for n in &self.notes {
                let _ = writeln!(s, "  - {n}");
            }
        }
        if timings {
            let _ = writeln!(s, "timings:");
            for (step, d) in &self.timings {
                let _ = writeln!(s, "  {step}: {:.3}s", d.as_secs_f64());
            }
        }
        let _ = writeln!(s, "summary: {}", self.summary());
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_layout_is_stable() {
        let mut r = Report::new("demo");
        r.value("index", 5);
        r.check("x", true, 5, 5, "trivial", "five");
        r.skip("y", 1, "published", "not reachable");
        r.timed("step", || ());
        let t = r.to_text(false);
        assert!(t.starts_with("scenario: demo\nversion: "));
        assert!(t.contains("  - id: x\n    status: pass\n"));
        assert!(!t.contains("timings:"));
        assert!(r.to_text(true).contains("timings:\n  step: "));
        assert!(r.passed());
        assert_eq!(r.summary(), "demo PASS (1 pass, 0 fail, 1 skipped)");
        r.check("z", false, 1, 2, "derived", "mismatch");
        assert!(!r.passed());
        assert_eq!(r.status("z"), Some(Status::Fail));
    }
}
