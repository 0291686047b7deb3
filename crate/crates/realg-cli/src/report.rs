//! Line-oriented and JSON reports.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub name: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Milliseconds; only recorded with `--timings`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<f64>,
}

/// Named text produced by a command, such as a generated separator file.
#[derive(Debug, Clone, Serialize)]
pub struct Output {
    pub name: String,
    pub text: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub checks: Vec<Record>,
    pub outputs: Vec<Output>,
    pub passed: bool,
    #[serde(skip)]
    timings: bool,
}

impl Report {
    pub fn new(command: String, timings: bool) -> Self {
        Report { command, checks: Vec::new(), outputs: Vec::new(), passed: true, timings }
    }

    pub fn check(&mut self, name: impl Into<String>, result: Result<(), String>, elapsed: Duration) {
        let (verdict, witness) = match result {
            Ok(()) => (Verdict::Pass, None),
            Err(w) => (Verdict::Fail, Some(w)),
        };
        self.passed &= verdict == Verdict::Pass;
        let duration_ms = self.timings.then(|| (elapsed.as_secs_f64() * 1e3 * 1e3).round() / 1e3);
        self.checks.push(Record { name: name.into(), verdict, witness, duration_ms });
    }

    /// Times `f` and records its outcome.
    pub fn run(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<(), String>) {
        let t0 = std::time::Instant::now();
        let r = f();
        self.check(name, r, t0.elapsed());
    }

    pub fn output(&mut self, name: impl Into<String>, text: impl Into<String>) {
        self.outputs.push(Output { name: name.into(), text: text.into() });
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("$ {}\n", self.command);
        for r in &self.checks {
            let verdict = match r.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "FAIL",
            };
            let _ = write!(out, "{verdict}  {}", r.name);
            if let Some(w) = &r.witness {
                let _ = write!(out, "  witness: {w}");
            }
            if let Some(ms) = r.duration_ms {
                let _ = write!(out, "  [{ms:.3} ms]");
            }
            out.push('\n');
        }
        for o in &self.outputs {
            if o.text.contains('\n') {
                let _ = write!(out, "--- {}\n{}", o.name, o.text);
                if !o.text.ends_with('\n') {
                    out.push('\n');
                }
            } else {
                let _ = writeln!(out, "{}: {}", o.name, o.text);
            }
        }
        let failed = self.checks.iter().filter(|r| r.verdict == Verdict::Fail).count();
        let _ = writeln!(
            out,
            "result: {} ({} checks, {failed} failed)",
            if self.passed { "pass" } else { "FAIL" },
            self.checks.len()
        );
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_only_on_failure() {
        let mut r = Report::new("realg test".into(), false);
        r.check("a", Ok(()), Duration::ZERO);
        r.check("b", Err("x=1".into()), Duration::ZERO);
        assert!(!r.passed);
        assert!(r.checks[0].witness.is_none());
        assert_eq!(r.checks[1].witness.as_deref(), Some("x=1"));
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert!(json["checks"][0].get("witness").is_none());
        assert!(json["checks"][0].get("duration_ms").is_none());
        assert_eq!(json["checks"][1]["verdict"], "fail");
    }

    #[test]
    fn timings_are_opt_in() {
        let mut r = Report::new("realg test".into(), true);
        r.check("a", Ok(()), Duration::from_micros(1500));
        assert_eq!(r.checks[0].duration_ms, Some(1.5));
        assert!(r.to_text().contains("[1.500 ms]"));
    }
}
