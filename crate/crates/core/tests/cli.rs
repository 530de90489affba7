use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadfactor")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], "quadfactor/1");
    v
}

#[test]
fn factor_example() {
    let v = json(&["factor", "--poly", "x^5 - 3x^2 + x + 1"]);
    let fs = v["result"]["factors"].as_array().unwrap();
    assert_eq!(fs.len(), 1);
    assert_eq!(fs[0]["p"], "-2");
    assert_eq!(fs[0]["q"], "1");
    assert_eq!(fs[0]["cofactor"], "x^3 + 2x^2 + 3x + 1");
}

#[test]
fn factor_text_is_a_product() {
    let out = run(&["factor", "--poly", "x^4 + x^3 + x + 1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success());
    assert!(text.contains("(x^2 + 2x + 1) * (x^2 - x + 1)"), "{text}");
}

#[test]
fn family_example() {
    let v = json(&["family", "--id", "T2.4.2", "--param", "2"]);
    let m = &v["result"]["members"][0];
    assert_eq!(m["f"], "x^4 + x^3 + x + 1");
    assert_eq!(m["factor"]["p"], "2");
    assert_eq!(m["factor"]["q"], "1");
}

#[test]
fn negative_parameters_parse() {
    let v = json(&["family", "--id", "T2.4.2", "--param", "-3/2"]);
    assert!(!v["result"]["members"].as_array().unwrap().is_empty());
}

#[test]
fn curve_example() {
    let v = json(&["curve", "--id", "C3.1.1", "--height", "10"]);
    let pts = &v["result"]["curves"][0]["points"];
    assert_eq!(pts, &serde_json::json!([["0", "1"], ["1", "3"]]));
}

#[test]
fn eliminate_and_sweep_run() {
    let v = json(&["eliminate", "--pattern", "aa1", "--exponents", "4,3,1"]);
    assert!(v["result"].to_string().contains('q'));
    let v = json(&["sweep", "--pattern", "aa1", "--exponents", "4,3,1", "--height", "3"]);
    assert!(!v["result"]["hits"].as_array().unwrap().is_empty());
}

#[test]
fn verify_paper_exits_zero() {
    let out = run(&["verify-paper"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&["verify-paper"]);
    assert_eq!(v["diagnostics"]["fail"], 0);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["family", "--id", "T9.9.9"][..],
        &["curve", "--id", "nope"],
        &["factor", "--poly", "x^^2"],
        &["sweep", "--pattern", "xyz", "--exponents", "4,3,1"],
        &["sweep", "--pattern", "a11", "--exponents", "4,4,1"],
        &["bogus"],
        &[],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn json_errors_are_objects() {
    let out = run(&["--json", "family", "--id", "T9.9.9"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["error"].as_str().unwrap().contains("T9.9.9"));
}

#[test]
fn curve_from_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        r#"{{"schema": "quadfactor-curves/1", "curves": [
            {{"id": "E1", "provenance": "", "status": "complete",
              "form": {{"square": "t^3 - t^2 + t"}},
              "points": [["0", "0"], ["1", "1"]], "note": ""}}
        ]}}"#
    )
    .unwrap();
    let path = f.path().to_str().unwrap();
    let v = json(&["curve", "--file", path, "--height", "30"]);
    let c = &v["result"]["curves"][0];
    assert_eq!(c["id"], "E1");
    assert_eq!(c["points"], serde_json::json!([["0", "0"], ["1", "1"]]));

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    write!(bad, r#"{{"schema": "other", "curves": []}}"#).unwrap();
    let out = run(&["curve", "--file", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}
