use std::process::{Command, Output};

use serde_json::Value;

fn qgs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgs"))
        .args(args)
        .env_remove("QGS_PRECISION_BITS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

#[test]
fn spectrum_report() {
    let out = qgs(&["spectrum", "--N", "2", "--q", "0.5", "--alpha-max", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["suite"], "spectrum");
    assert_eq!(v["table"]["columns"][0], "alpha");
    assert_eq!(v["table"]["rows"].as_array().unwrap().len(), 4);
    assert_eq!(v["table"]["rows"][1][3], 0.4);
    assert!(v.get("wall_time_s").is_none());
}

#[test]
fn csv_header_and_rows() {
    let out = qgs(&["--format", "csv", "fusion", "--N", "3", "--q", "q0", "--alpha-max", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("alpha,"));
    assert_eq!(lines.count(), 5);
}

#[test]
fn identical_requests_give_identical_bytes() {
    let args = ["gap-scan", "--q", "0.5", "--alpha-max", "40", "--gamma-max", "3"];
    assert_eq!(qgs(&args).stdout, qgs(&args).stdout);
}

#[test]
fn q_above_kac_point_is_a_usage_error() {
    let out = qgs(&["spectrum", "--N", "3", "--q", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "domain");
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = qgs(&["spectrum", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oversized_chain_is_a_resource_error() {
    let out = qgs(&["jw-verify", "--q", "0.5", "--n-max", "40"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn expected_verdict_controls_exit_status() {
    let base = ["hs-cert", "--N", "3", "--q", "q0", "--t", "0"];
    let ok = qgs(&[&base[..], &["--expect", "divergent"]].concat());
    assert_eq!(ok.status.code(), Some(0));
    let bad = qgs(&[&base[..], &["--expect", "finite"]].concat());
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(json(&bad)["verdict"], "divergent");
}

#[test]
fn freeprod_single_pattern() {
    let out = qgs(&["freeprod-verify", "--pattern", "0/01/1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["residual_terms"], 0);
    assert_eq!(v["pass"], true);
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("qgs-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cesaro.json");
    let out = qgs(&["cesaro", "--function", "exp2x", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["pass"], true);
    std::fs::remove_dir_all(dir).unwrap();
}
