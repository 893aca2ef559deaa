use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn pbwforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pbwforge"))
        .args(args)
        .env("PBWFORGE_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn jacobi_verdicts() {
    let out = pbwforge(&["jacobi", "--builtin", "sl2", "--format", "table"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("jacobi: satisfied"));
    let out = pbwforge(&["jacobi", "--builtin", "nonjacobi3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!json(&out)["result"]["defects"].as_array().unwrap().is_empty());
    assert_eq!(pbwforge(&["jacobi", "--builtin", "abelian3"]).status.code(), Some(0));
    assert_eq!(pbwforge(&["jacobi", "--builtin", "nonpoisson3"]).status.code(), Some(1));
    assert_eq!(pbwforge(&["jacobi", "--builtin", "quad2"]).status.code(), Some(0));
}

#[test]
fn wrong_kinds_are_usage_errors() {
    let out = pbwforge(&["jacobi", "--builtin", "zero3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("lie or poisson"));
    assert_eq!(pbwforge(&["solve", "--builtin", "sl2"]).status.code(), Some(2));
    assert_eq!(pbwforge(&["cobar", "--builtin", "quad2", "--deform", "ce"]).status.code(), Some(2));
    assert_eq!(pbwforge(&["cobar", "--builtin", "nonjacobi3", "--deform", "ce"]).status.code(), Some(2));
    assert_eq!(pbwforge(&["pbw-check", "--builtin", "nosuch"]).status.code(), Some(2));
    assert_eq!(pbwforge(&["pbw-check"]).status.code(), Some(2));
    assert_eq!(pbwforge(&["pbw-check", "--builtin", "sl2", "--hbar-order", "1"]).status.code(), Some(2));
}

#[test]
fn malformed_files_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let bad_json = write(dir.path(), "a.json", "{ not json");
    assert_eq!(pbwforge(&["jacobi", "--input", &bad_json]).status.code(), Some(2));
    let bad_pair = write(
        dir.path(),
        "b.json",
        r#"{"name":"b","kind":"lie","generators":["x","y"],"structure_constants":[{"pair":[1,0],"value":[]}]}"#,
    );
    let out = pbwforge(&["jacobi", "--input", &bad_pair]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("i < j"));
    let unscaled = write(
        dir.path(),
        "c.json",
        r#"{"name":"c","kind":"relations","generators":["x","y"],"relations":[{"pair":[0,1],"relation":[{"word":[0],"coeff":["1"]}]}]}"#,
    );
    assert_eq!(pbwforge(&["pbw-check", "--input", &unscaled]).status.code(), Some(2));
}

#[test]
fn pbw_check_exit_codes_and_bounds() {
    let out = pbwforge(&["pbw-check", "--builtin", "heis3", "--max-degree", "4", "--hbar-order", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["bounds"]["max_degree"]["value"], 4);
    assert_eq!(v["bounds"]["max_degree"]["source"], "flag");
    assert_eq!(v["bounds"]["hbar_order"]["value"], 3);
    let out = pbwforge(&["pbw-check", "--builtin", "nonjacobi3"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["bounds"]["hbar_order"]["source"], "file");
    assert_eq!(v["bounds"]["span_length"], 5);
    // with K = 2 the ℏ² defect is truncated away
    assert_eq!(pbwforge(&["pbw-check", "--builtin", "nonjacobi3", "--hbar-order", "2"]).status.code(), Some(0));
    assert_eq!(pbwforge(&["pbw-check", "--builtin", "zero3"]).status.code(), Some(0));
}

#[test]
fn witness_logs_replay() {
    let out = pbwforge(&["pbw-check", "--builtin", "nonjacobi3", "--witness"]);
    let v = json(&out);
    let w = v["result"]["witness"].as_array().unwrap();
    assert_eq!(w.len(), 1);
    assert_eq!(w[0]["triple"], serde_json::json!([2, 1, 0]));
    assert!(!w[0]["left"]["steps"].as_array().unwrap().is_empty());
    assert_ne!(w[0]["left"]["normal_form"], w[0]["right"]["normal_form"]);
    let plain = json(&pbwforge(&["pbw-check", "--builtin", "sl2", "--witness"]));
    for t in plain["result"]["witness"].as_array().unwrap() {
        assert_eq!(t["left"]["normal_form"], t["right"]["normal_form"]);
    }
}

#[test]
fn solve_output_is_reingestible() {
    let dir = tempfile::tempdir().unwrap();
    for (builtin, code) in [("sl2lift", 0), ("quad2", 0), ("nonpoisson3", 1)] {
        let out = pbwforge(&["solve", "--builtin", builtin]);
        assert_eq!(out.status.code(), Some(code), "{builtin}");
        let v = json(&out);
        let file = serde_json::to_string_pretty(&v["result"]["relations_file"]).unwrap();
        let path = write(dir.path(), &format!("{builtin}.json"), &file);
        let check = pbwforge(&["pbw-check", "--input", &path]);
        assert_eq!(check.status.code(), Some(code), "{builtin} re-ingested");
        let c = json(&check);
        assert_eq!(c["input"]["kind"], "relations");
        assert_eq!(c["result"]["relations"], v["result"]["relations_file"]["relations"]);
    }
}

#[test]
fn solve_zero_bivector() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "z.json",
        r#"{"name":"z","kind":"poisson","generators":["x","y","z"],"bivector":[],"defaults":{"hbar_order":3}}"#,
    );
    let v = json(&pbwforge(&["solve", "--input", &path]));
    assert_eq!(v["status"], "solved");
    assert_eq!(v["result"]["relations_file"]["relations"], serde_json::json!([]));
}

#[test]
fn cobar_zero_weight_is_one_cell() {
    let v = json(&pbwforge(&["cobar", "--builtin", "abelian2", "--weights", "0"]));
    let cells = v["result"]["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 1);
    assert_eq!(cells[0]["rank_profile"], serde_json::json!([1]));
}

#[test]
fn selftest_suites() {
    let out = pbwforge(&["selftest", "--suite", "hochschild", "--seed", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let suites = v["result"]["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 1);
    assert_eq!(suites[0]["name"], "hochschild");
    assert_eq!(out.stdout, pbwforge(&["selftest", "--suite", "hochschild", "--seed", "9"]).stdout);
}

#[test]
fn timing_is_opt_in() {
    let v = json(&pbwforge(&["jacobi", "--builtin", "sl2"]));
    assert!(v.get("timing_ms").is_none());
    let v = json(&pbwforge(&["jacobi", "--builtin", "sl2", "--timing"]));
    assert!(v["timing_ms"].is_u64());
}

#[test]
fn thread_cap_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_pbwforge"))
        .args(["jacobi", "--builtin", "sl2"])
        .env("PBWFORGE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
