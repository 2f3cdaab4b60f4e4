use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn zinbiel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zinbiel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Runs `catalog emit` and stores the output in `name`.
fn emit(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let mut all = vec!["catalog", "emit"];
    all.extend_from_slice(args);
    let o = zinbiel(&all);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    write(dir, name, &stdout(&o))
}

#[test]
fn a1_is_zinbiel() {
    let dir = TempDir::new().unwrap();
    let a1 = emit(&dir, "a1.json", &["A1"]);
    let o = zinbiel(&["check", "zinbiel", s(&a1)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("PASS"));
}

#[test]
fn failing_check_prints_a_witness() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", r#"{"dim": 1, "products": {"1,1": {"1": "1"}}}"#);
    let o = zinbiel(&["check", "zinbiel", s(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    // (e·e)·e = e against e·(e·e + e·e) = 2e.
    assert!(
        stdout(&o).contains("at x=1, y=1, z=1: lhs = (1), rhs = (2)"),
        "{}",
        stdout(&o)
    );

    let o = zinbiel(&["check", "zinbiel", s(&bad), "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["conditions"][0]["witness"]["lhs"], serde_json::json!(["1"]));
}

#[test]
fn malformed_input_exits_2_with_location() {
    let dir = TempDir::new().unwrap();
    let broken = write(&dir, "broken.json", "{\n  \"dim\": 2,\n  \"products\": {\n}");
    let o = zinbiel(&["check", "zinbiel", s(&broken)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));

    let wrong = write(&dir, "wrong.json", r#"{"dim": 2, "products": {"1,1": {"3": "1"}}}"#);
    let o = zinbiel(&["check", "zinbiel", s(&wrong)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("products.\"1,1\".3"), "{}", stderr(&o));

    assert_eq!(zinbiel(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        zinbiel(&["check", "zinbiel", "/nonexistent.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn extract_then_build_gives_back_the_algebra() {
    let dir = TempDir::new().unwrap();
    let a6 = emit(&dir, "a6.json", &["A6"]);
    let o = zinbiel(&["extract", s(&a6), "--z", "2,3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let datum = write(&dir, "datum.json", &stdout(&o));

    let o = zinbiel(&["check", "datum", s(&datum)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = zinbiel(&["build", "unified", s(&datum)]);
    assert_eq!(o.status.code(), Some(0));
    let built = write(&dir, "built.json", &stdout(&o));
    assert_eq!(zinbiel(&["check", "zinbiel", s(&built)]).status.code(), Some(0));

    // Z = span{e1} is not a subalgebra of A6, since e1·e1 = e2.
    let o = zinbiel(&["extract", s(&a6), "--z", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not closed"), "{}", stderr(&o));
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let a6 = emit(&dir, "a6.json", &["A6"]);
    let first = zinbiel(&["extract", s(&a6), "--z", "2,3"]);
    let second = zinbiel(&["extract", s(&a6), "--z", "2,3"]);
    assert_eq!(first.stdout, second.stdout);
    let datum = write(&dir, "datum.json", &stdout(&first));
    let r1 = zinbiel(&["check", "datum", s(&datum), "--json"]);
    let r2 = zinbiel(&["check", "datum", s(&datum), "--json"]);
    assert_eq!(r1.stdout, r2.stdout);
}

#[test]
fn build_refuses_invalid_input_unless_forced() {
    let dir = TempDir::new().unwrap();
    let da1 = emit(&dir, "da1.json", &["DA1"]);
    let o = zinbiel(&["build", "flag", s(&da1)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("F1     FAIL"), "{}", stdout(&o));
    let o = zinbiel(&["build", "flag", s(&da1), "--force"]);
    assert_eq!(o.status.code(), Some(0));
    let forced = write(&dir, "forced.json", &stdout(&o));
    assert_eq!(zinbiel(&["check", "zinbiel", s(&forced)]).status.code(), Some(1));

    let da5 = emit(&dir, "da5.json", &["DA5", "--param", "a23=-1/2"]);
    let o = zinbiel(&["build", "flag", s(&da5)]);
    assert_eq!(o.status.code(), Some(0));
    let built = write(&dir, "built.json", &stdout(&o));
    assert_eq!(zinbiel(&["check", "zinbiel", s(&built)]).status.code(), Some(0));
}

#[test]
fn solve_flag() {
    let dir = TempDir::new().unwrap();
    let a5 = emit(&dir, "a5.json", &["A5"]);
    let o = zinbiel(&["solve", "flag", s(&a5), "--mode", "D", "--mu", "0,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["linear_basis"].as_array().unwrap().len(), 2);
    assert_eq!(v["residuals"], serde_json::json!([]));

    // μ = (1, 0, 1/2) violates μ(x·y + y·x) = μ(x)μ(y) at x = y = e1 on A2,
    // so the solver refuses it and prints the failing condition.
    let a2 = emit(&dir, "a2.json", &["A2"]);
    let o = zinbiel(&["solve", "flag", s(&a2), "--mode", "D", "--mu", "1,0,1/2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("F1"), "{}", stdout(&o));

    let o = zinbiel(&["solve", "flag", s(&a2), "--mode", "T", "--mu", "1,x,0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn semidirect_of_the_regular_bimodule() {
    let dir = TempDir::new().unwrap();
    let b = write(
        &dir,
        "b.json",
        r#"{"base": {"dim": 2, "products": {"1,1": {"2": "1"}}},
            "dimV": 2,
            "actL": {"1,1": {"2": "1"}},
            "actR": {"1,1": {"2": "1"}}}"#,
    );
    assert_eq!(zinbiel(&["check", "bimodule", s(&b)]).status.code(), Some(0));
    let o = zinbiel(&["build", "semidirect", s(&b)]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v["products"],
        serde_json::json!({"1,1": {"2": "1"}, "1,3": {"4": "1"}, "3,1": {"4": "1"}})
    );
}

#[test]
fn a3_matched_pair_round_trip() {
    let dir = TempDir::new().unwrap();
    let mp = write(
        &dir,
        "mp.json",
        r#"{"base": {"dim": 2}, "top": {"dim": 1},
            "projL": {"1,1": {"2": "1/2"}}, "projR": {"1,1": {"2": "-1/2"}}}"#,
    );
    assert_eq!(zinbiel(&["check", "matched", s(&mp)]).status.code(), Some(0));
    let o = zinbiel(&["build", "bicrossed", s(&mp)]);
    assert_eq!(o.status.code(), Some(0));
    let r = write(&dir, "r.json", r#"{"r": [["1", "-1"]]}"#);
    let o = zinbiel(&["build", "rdeform", s(&mp), s(&r)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(zinbiel(&["build", "rdeform", s(&mp)]).status.code(), Some(2));
}

#[test]
fn catalog_commands() {
    let o = zinbiel(&["catalog", "list"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.lines().any(|l| l.starts_with("DA5") && l.contains("family D5")),
        "{out}"
    );

    let o = zinbiel(&["catalog", "emit", "A5", "--param", "lambda=-2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["products"]["2,2"], serde_json::json!({"3": "-2"}));

    assert_eq!(zinbiel(&["catalog", "emit", "A9"]).status.code(), Some(2));
    assert_eq!(
        zinbiel(&["catalog", "emit", "A5", "--param", "lambda=0"]).status.code(),
        Some(2)
    );
    let o = zinbiel(&["catalog", "emit", "TA5.1", "--algebra"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], serde_json::json!(4));
}

#[test]
fn verify_paper_reports_every_criterion() {
    let o = zinbiel(&["verify", "paper", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["criteria_run"], serde_json::json!(10));
    let passed = v["passed"].as_bool().unwrap();
    assert_eq!(o.status.code(), Some(if passed { 0 } else { 1 }));
}
