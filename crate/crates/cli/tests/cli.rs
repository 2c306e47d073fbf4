use std::process::Command;

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_mcm");

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(BIN).args(args).output().expect("spawn mcm");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn strip_timing(line: &str) -> Value {
    let mut v: Value = serde_json::from_str(line).unwrap();
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v
}

#[test]
fn text_output_is_reproducible() {
    let args = ["--seed", "3", "verify", "all", "--max-n", "3"];
    let (code, first) = run(&args);
    assert_eq!(code, 0, "{first}");
    assert_eq!(run(&args).1, first);
}

#[test]
fn json_output_is_reproducible_up_to_timing() {
    let args = ["--json", "verify", "seven-formulas", "--n", "3", "--k", "1", "--a", "0x1"];
    let a: Vec<Value> = run(&args).1.lines().map(strip_timing).collect();
    let b: Vec<Value> = run(&args).1.lines().map(strip_timing).collect();
    assert_eq!(a, b);
}

#[test]
fn json_reports_follow_the_schema() {
    let (_, out) = run(&["--json", "verify", "all", "--max-n", "2"]);
    let mut seen = 0;
    for line in out.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert!(v["check"].is_string(), "{line}");
        assert!(v["pass"].is_boolean());
        assert!(v["elapsed_ms"].is_u64());
        assert_eq!(v["pass"] == false, v["counterexample"].is_string());
        seen += 1;
    }
    assert!(seen >= 15, "{seen} reports");
    let (code, out) = run(&["--json", "verify", "main-identity", "--n", "2", "--mutate"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["pass"], false);
    assert!(v["counterexample"].as_str().unwrap().starts_with("X^0"));
}

#[test]
fn examples() {
    assert_eq!(run(&["factor", "--field", "2^1", "--poly", "0x1,0x1,0x0,0x0,0x0,0x1"]), (0, "[2,3]\n".into()));
    assert_eq!(run(&["dickson", "--k", "5"]), (0, "0x0,0x1,0x0,0x1,0x0,0x1\n".into()));
    let (code, out) = run(&["permcheck", "--n", "3", "--m", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"is_permutation\":false"));
    let (code, out) = run(&["--json", "frame", "--n", "2", "--k", "1", "--a", "0x1", "--dump"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["ambient_degree"], 12);
    assert_eq!(v["roots"].as_array().unwrap().len(), 5);
    assert_eq!(v["e_table"].as_array().unwrap().len(), 6);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["verify", "nonsense"]).0, 2);
    assert_eq!(run(&["verify", "root-product", "--a", "0xzz"]).0, 2);
    assert_eq!(run(&["verify", "root-product", "--k", "1", "--a", "0x2"]).0, 2);
    assert_eq!(run(&["verify", "main-identity", "--n", "1"]).0, 2);
    assert_eq!(run(&["counts", "--n", "4", "--m", "5"]).0, 2);
    assert_eq!(run(&["verify", "all", "--mutate"]).0, 2);
}

#[test]
fn thread_cap_is_honored_and_validated() {
    let out = Command::new(BIN).env("MCM_THREADS", "1").args(["verify", "dihedral", "--n", "3"]).output().unwrap();
    assert!(out.status.success());
    let out = Command::new(BIN).env("MCM_THREADS", "zero").args(["verify", "dihedral"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
