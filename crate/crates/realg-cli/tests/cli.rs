use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn realg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_realg")).args(args).env_remove("REALG_MAX_CARRIER").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn boolean_structure_validates() {
    let o = realg(&["validate", &fixture("b4-par.txt"), &fixture("b4-tens.txt"), &fixture("b4-imp.txt")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn negated_top_not_bottom_fails_commutation() {
    let o = realg(&["--json", "validate", &fixture("bad-neg-top.txt")]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let failed: Vec<&serde_json::Value> = report["checks"].as_array().unwrap().iter().filter(|c| c["verdict"] == "fail").collect();
    assert!(failed.iter().any(|c| c["name"].as_str().unwrap().ends_with("commutation-nullary") && c["witness"] == "[3]"));
    for c in report["checks"].as_array().unwrap() {
        assert_eq!(c.get("witness").is_some(), c["verdict"] == "fail");
    }
}

#[test]
fn malformed_header_is_a_parse_error() {
    let o = realg(&["validate", &fixture("malformed.txt")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1, column 1"));
}

#[test]
fn separator_blocks_are_checked() {
    assert_eq!(realg(&["validate", &fixture("b4-par-sep.txt")]).status.code(), Some(0));
    let o = realg(&["validate", &fixture("b4-par-notsep.txt")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("upward-closure"));
}

#[test]
fn empty_closure_on_boolean_is_top() {
    let o = realg(&["closure", "--in", &fixture("b4-par.txt")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("member 3\n"));
    assert!(!out.contains("member 2\n"));
    assert!(out.contains("consistent: true"));
}

#[test]
fn bottom_generator_is_inconsistent() {
    let o = realg(&["closure", "--in", &fixture("b4-tens.txt"), "--generators", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("consistent: false"));
}

#[test]
fn closure_writes_a_loadable_separator_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sep.txt");
    let o = realg(&["closure", "--in", &fixture("b4-par.txt"), "--generators", "1", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text, "separator kind=disjunctive classical=true\nmember 1\nmember 3\n");
    let combined = dir.path().join("alg.txt");
    std::fs::write(&combined, std::fs::read_to_string(fixture("b4-par.txt")).unwrap() + &text).unwrap();
    assert_eq!(realg(&["validate", combined.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn check_only_rejects_a_non_separator() {
    let o = realg(&["closure", "--check-only", "--in", &fixture("b4-par-notsep.txt")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn eval_examples() {
    let par = fixture("b4-par.txt");
    assert!(stdout(&realg(&["eval", "--in", &par, "(lam x x)"])).contains("value: 3 (⊤)"));
    assert!(stdout(&realg(&["eval", "--in", &par, "PS3"])).contains("value: 3 (⊤)"));
    let o = stdout(&realg(&["eval", "--in", &par, "(cmd (par 3) (par 0))"]));
    assert!(o.contains("term: 3 (⊤)") && o.contains("context: 0 (⊥)") && o.contains("in pole: false"));
    let o = stdout(&realg(&["eval", "--in", &par, "(cmd (par 0) (par 3))"]));
    assert!(o.contains("in pole: true"));
}

#[test]
fn dualize_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let there = dir.path().join("tens.txt");
    let back = dir.path().join("par.txt");
    let o = realg(&["dualize", "--in", &fixture("b4-par-sep.txt"), "--direction", "pa2ta", "--out", there.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = realg(&["dualize", "--in", there.to_str().unwrap(), "--direction", "ta2pa", "--out", back.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let original = realg(&["closure", "--check-only", "--in", &fixture("b4-par-sep.txt")]);
    let returned = realg(&["closure", "--check-only", "--in", back.to_str().unwrap()]);
    let tail = |o: &Output| stdout(o).lines().skip(1).collect::<Vec<_>>().join("\n");
    assert_eq!(tail(&original), tail(&returned));
}

#[test]
fn dualize_rejects_the_wrong_direction() {
    let o = realg(&["dualize", "--in", &fixture("b4-par-sep.txt"), "--direction", "ta2pa"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn quotient_of_boolean_by_top() {
    let o = realg(&["quotient", "--in", &fixture("b4-tens-sep.txt")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("class ").count(), 4);
}

#[test]
fn tripos_report_has_a_line_per_clause() {
    let o = realg(&["tripos", "--in", &fixture("b4-par-sep.txt"), &fixture("gap-tens.txt"), "--imax", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    for clause in ["functoriality", "∃ ⊣ T(π) ⊣ ∀", "equality predicate", "Beck-Chevalley", "generic predicate"] {
        assert_eq!(out.matches(&format!(": {clause}\n")).count(), 2, "{clause}");
    }
}

#[test]
fn calc_subcommands() {
    let o = realg(&["calc", "run", &fixture("id.par")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("-> [mu-beta] (cmd (par 3) (par 0))"));
    let o = realg(&["calc", "typecheck", &fixture("typed.par")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[Cut]"));
    let o = realg(&["calc", "interpret", &fixture("id.par"), "--structure", &fixture("b4-par.txt")]);
    assert!(stdout(&o).contains("in pole: false"));
}

#[test]
fn carrier_cap_from_flag_and_environment() {
    assert_eq!(realg(&["--max-carrier", "3", "validate", &fixture("b4-par.txt")]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_realg")).args(["validate", &fixture("b4-par.txt")]).env("REALG_MAX_CARRIER", "2").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_scope_is_a_usage_error() {
    let o = realg(&["suite", "--scope", "slow"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown scope"));
}

#[test]
fn fast_suite_passes_reproducibly() {
    let t0 = std::time::Instant::now();
    let first = realg(&["suite", "--scope", "fast", "--seed", "7"]);
    assert!(t0.elapsed().as_secs() < 60);
    assert_eq!(first.status.code(), Some(0), "{}", stdout(&first));
    let second = realg(&["suite", "--scope", "fast", "--seed", "7"]);
    assert_eq!(first.stdout, second.stdout);
    assert!(stdout(&first).contains("seed 7"));
    let json = realg(&["--json", "suite", "--scope", "fast"]);
    let report: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(report["passed"], true);
}
