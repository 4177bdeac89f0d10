//! End-to-end checks of the `signsum` binary: outputs, exit codes, JSON and
//! configuration handling.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn signsum() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_signsum"));
    cmd.env_remove("SIGNSUM_CONFIG");
    cmd
}

fn run(args: &[&str]) -> Output {
    signsum().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let v = serde_json::from_slice(&out.stdout).expect("valid JSON on stdout");
    (v, out.status.code().unwrap())
}

fn temp_config(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("signsum-{}-{name}.conf", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn count_all_engines_agree() {
    let out = run(&["count", "0; 1,2,3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for line in [
        "brute     2",
        "dp        2",
        "integral  2",
        "verdict   match",
    ] {
        assert!(text.contains(line), "{text}");
    }
}

#[test]
fn count_edge_inputs() {
    let (v, code) = json(&["count", "7; "]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["counts"]["dp"], "0");
    let (v, code) = json(&["count", "3; 1,1,1,1,1", "--engine", "brute"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["count"], "5");
    let (v, _) = json(&["count", "-2; 1,-2,3", "--engine", "dp"]);
    assert_eq!(v["result"]["count"], "1");
}

#[test]
fn parity_counts() {
    for (m, expected) in [("2", "2"), ("-1", "2"), ("3", "1")] {
        let (v, code) = json(&["parity-count", "0; 1,2,3", "-m", m]);
        assert_eq!(code, 0);
        assert_eq!(v["result"]["counts"]["dp"], expected, "m = {m}");
        assert_eq!(v["result"]["counts"]["brute"], expected, "m = {m}");
    }
    let (v, _) = json(&["parity-count", "2; 1,2,3", "-m", "1"]);
    assert_eq!(v["result"]["counts"]["dp"], "0");
}

#[test]
fn expand_latex() {
    let out = run(&["expand", "0; 1,2,3"]);
    assert_eq!(
        stdout(&out).trim(),
        r"\frac{1}{4} + \frac{1}{4}\cos(2x) + \frac{1}{4}\cos(4x) + \frac{1}{4}\cos(6x)"
    );
}

#[test]
fn expand_json_rows() {
    let (v, code) = json(&["expand", "2; 1,2,3", "-m", "1", "--format", "json"]);
    assert_eq!(code, 0);
    assert!(v["result"].is_object() || v["result"].is_array(), "{v}");
}

#[test]
fn integrate_worked_value() {
    let out = run(&[
        "integrate",
        "2; 1,2,3",
        "-m",
        "1",
        "-p",
        "1",
        "-q",
        "1",
        "--engine",
        "all",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("1/4*pi"), "{text}");
    assert!(text.contains("match"), "{text}");

    let out = run(&[
        "integrate",
        "2; 1,2,3",
        "-m",
        "1",
        "-p",
        "1",
        "-q",
        "1",
        "--engine",
        "theorem5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("1/4*pi"));

    let out = run(&["integrate", "0; 1,2,3"]);
    assert!(stdout(&out).contains("1/4*pi"));
}

#[test]
fn integrate_even_m_vanishes() {
    let (v, code) = json(&[
        "integrate",
        "1; 1,2,3",
        "-m",
        "0",
        "-p",
        "1",
        "-q",
        "1",
        "--engine",
        "closed-form",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["value"], "0", "{v}");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["count", "x"]).status.code(), Some(2));
    assert_eq!(run(&["count", "1; 2,,3"]).status.code(), Some(2));
    let odd_span = run(&[
        "integrate",
        "2; 1,2,3",
        "-m",
        "1",
        "-p",
        "1",
        "-q",
        "0",
        "--engine",
        "closed-form",
    ]);
    assert_eq!(odd_span.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&odd_span.stderr).contains("p + q"));
    assert_eq!(
        run(&["parity-count", "0; 1,2", "-m", "5"]).status.code(),
        Some(3)
    );
    let capped = run(&[
        "--enumeration-cap",
        "3",
        "count",
        "0; 1,2,3,4",
        "--engine",
        "brute",
    ]);
    assert_eq!(capped.status.code(), Some(4));
    assert_eq!(
        run(&["verify", "--trials", "60", "--inject-fault"])
            .status
            .code(),
        Some(5)
    );
}

#[test]
fn json_envelope_round_trips() {
    for args in [
        vec!["--json", "count", "0; 1,2,3"],
        vec![
            "--json",
            "integrate",
            "2; 1,2,3",
            "-m",
            "1",
            "-p",
            "1",
            "-q",
            "1",
            "--engine",
            "all",
        ],
        vec!["--json", "expand", "0; 1,2,3", "--format", "json"],
        vec!["--json", "verify", "--trials", "5"],
    ] {
        let raw = stdout(&run(&args));
        let v: Value = serde_json::from_str(&raw).unwrap();
        assert_eq!(v["schema"], "signsum/1");
        for key in ["command", "input", "engine", "exact", "result"] {
            assert!(v.get(key).is_some(), "{key} missing in {raw}");
        }
        assert_eq!(serde_json::to_string_pretty(&v).unwrap(), raw.trim_end());
    }
}

#[test]
fn verify_is_reproducible_and_passes() {
    let args = ["--json", "--seed", "42", "verify", "--trials", "50"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["result"]["passed"], true);

    let (v, code) = json(&["verify", "--max-n", "0", "--trials", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["passed"], true);
}

#[test]
fn injected_fault_reports_counterexample() {
    let (v, code) = json(&["verify", "--trials", "60", "--inject-fault"]);
    assert_eq!(code, 5);
    let props = v["result"]["properties"].as_array().unwrap();
    let paths = props
        .iter()
        .find(|p| p["name"] == "expansion-paths")
        .unwrap();
    assert_eq!(paths["passed"], false);
    assert!(paths["counterexample"].is_string());
}

#[test]
fn bench_grid_size() {
    let (v, code) = json(&["bench", "--max-n", "4", "--reps", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["rows"].as_array().unwrap().len(), 12);
    let (v, code) = json(&["bench", "--max-n", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["rows"].as_array().unwrap().len(), 0);
}

#[test]
fn config_file_and_precedence() {
    let path = temp_config("cap", "# caps\nenumeration_cap = 3\nverify.trials = 4\n");
    let p = path.to_str().unwrap();
    let capped = run(&["--config", p, "count", "0; 1,2,3,4", "--engine", "brute"]);
    assert_eq!(capped.status.code(), Some(4));
    // The flag overrides the file.
    let flagged = run(&[
        "--config",
        p,
        "--enumeration-cap",
        "10",
        "count",
        "0; 1,2,3,4",
        "--engine",
        "brute",
    ]);
    assert_eq!(flagged.status.code(), Some(0));

    let (v, _) = json(&["--config", p, "verify"]);
    assert!(v["input"].as_str().unwrap().contains("trials=4"), "{v}");

    let via_env = signsum()
        .env("SIGNSUM_CONFIG", &path)
        .args(["count", "0; 1,2,3,4", "--engine", "brute"])
        .output()
        .unwrap();
    assert_eq!(via_env.status.code(), Some(4));
    std::fs::remove_file(path).ok();
}

#[test]
fn malformed_config_is_a_parse_error() {
    let path = temp_config("bad", "enumeration_cap = lots\n");
    let out = run(&["--config", path.to_str().unwrap(), "count", "0; 1"]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(path).ok();
}
