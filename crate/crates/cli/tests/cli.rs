use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diophant")).args(args).output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

/// Every number in machine-readable output is an integer.
fn no_floats(v: &Value) -> bool {
    match v {
        Value::Number(n) => n.is_i64() || n.is_u64(),
        Value::Array(a) => a.iter().all(no_floats),
        Value::Object(o) => o.values().all(no_floats),
        _ => true,
    }
}

fn problem_file(dir: &tempfile::TempDir, body: &str) -> String {
    let path = dir.path().join("p.json");
    std::fs::write(&path, body).unwrap();
    path.display().to_string()
}

#[test]
fn psi_record_table_with_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("records.csv");
    let out = run(&["psi", "-i", &data("golden.json"), "--t-max", "60", "--csv", csv.to_str().unwrap()]);
    assert!(out.status.success());
    let r = report(&out);
    let ts: Vec<i64> = r["result"]["records"].as_array().unwrap().iter().map(|x| x["t"].as_i64().unwrap()).collect();
    assert_eq!(ts, [1, 2, 3, 5, 8, 13, 21, 34, 55]);
    assert_eq!(r["result"]["records"][3]["psi"], "9017/100000");
    assert_eq!(r["input_sha256"].as_str().unwrap().len(), 64);
    assert!(no_floats(&r));
    let text = std::fs::read_to_string(csv).unwrap();
    assert_eq!(text.lines().next(), Some("t,psi,witness"));
    assert_eq!(text.lines().count(), 10);
}

#[test]
fn mahler_rows_for_d_two() {
    let out = run(&["mahler", "-i", &data("golden.json"), "--t", "5"]);
    assert!(out.status.success());
    let r = report(&out);
    for row in r["result"].as_array().unwrap() {
        assert_eq!(row["lower"], "1/2");
        assert_eq!(row["upper"], "1/1");
        assert_eq!(row["pass"], true);
    }
    assert!(r["pass"].as_bool().unwrap());
}

#[test]
fn solvers_report_certificates() {
    let out = run(&["solve", "satz7", "-i", &data("golden_sqrt2.json"), "--epsilon", "1/2", "--count", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["result"].as_array().unwrap().len(), 2);
    assert!(no_floats(&r));

    let out = run(&["solve", "satz3", "-i", &data("sqrt2_sqrt3.json"), "--epsilon", "1/2"]);
    assert!(out.status.success());
    assert_eq!(report(&out)["result"]["point"]["x"], serde_json::json!([-104, -9]));
}

#[test]
fn scan_writes_interval_statistics() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("scan.csv");
    let out = run(&["scan-primitive", "-i", &data("golden.json"), "--x-max", "1000", "--csv", csv.to_str().unwrap()]);
    assert!(out.status.success());
    let r = report(&out);
    assert!(no_floats(&r));
    let lo_hi = &r["result"]["records"][2]["log_sq"];
    assert_eq!(lo_hi.as_array().unwrap().len(), 2);
    assert!(std::fs::read_to_string(csv).unwrap().starts_with("x,y,residual"));
}

#[test]
fn verify_passes_and_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("verify.json");
    let out = run(&["verify", "--seed", "7", "--instances", "50", "--json", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(std::fs::read(&path).unwrap(), out.stdout);
    let r = report(&out);
    assert_eq!(r["result"]["instances"], 50);
    assert!(r.get("input_sha256").is_none());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["psi", "--bogus"]).status.code(), Some(2));

    let half = problem_file(&dir, r#"{"theta": [["1/2"]]}"#);
    assert_eq!(run(&["psi", "-i", &half, "--t", "2"]).status.code(), Some(3));
    assert_eq!(run(&["psi", "-i", &half, "--t", "1"]).status.code(), Some(0));

    let third = problem_file(&dir, r#"{"theta": [["1/3"]]}"#);
    assert_eq!(run(&["psi", "-i", &third, "--t", "500", "--budget", "10"]).status.code(), Some(4));
    let env = Command::new(env!("CARGO_BIN_EXE_diophant"))
        .args(["psi", "-i", &third, "--t", "500"])
        .env("DIOPHANT_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(4));

    let ragged = problem_file(&dir, r#"{"theta": [["1/3", "1/5"], ["1/7"]]}"#);
    assert_eq!(run(&["psi", "-i", &ragged, "--t", "3"]).status.code(), Some(2));

    let far = problem_file(&dir, r#"{"theta": [["1/3"]], "alpha": ["1/2"]}"#);
    let out = run(&["solve", "satz1", "-i", &far, "--c", "1/100", "--x", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn oracle_subcommand() {
    let out = run(&["oracle", "psi", "-i", &data("golden.json"), "--t", "5"]);
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!(r["result"]["values"][0], "9017/100000");
    assert_eq!(r["result"]["quantity"], "PSI");
}
