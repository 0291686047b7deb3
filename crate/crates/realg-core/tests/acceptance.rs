//! Runs the ten acceptance criteria at full scope and prints one line each.

use std::io::Write;

use realg_core::suite::{run_criterion, Scope};

#[test]
fn acceptance() {
    let seed = std::env::var("REALG_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0);
    // written to the real stdout so the summary shows without --nocapture
    let mut out = std::io::stdout().lock();
    writeln!(out).unwrap();
    let mut failed = Vec::new();
    for id in 1..=10 {
        let report = run_criterion(id, Scope::Full, seed);
        writeln!(out, "{}  [{:.1}s]", report.summary(), report.elapsed.as_secs_f64()).unwrap();
        for check in &report.checks {
            writeln!(out, "    {check}").unwrap();
        }
        out.flush().unwrap();
        if !report.passed() {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
