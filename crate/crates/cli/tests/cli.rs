use std::process::{Command, Output};

fn ffstat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffstat")).args(args).output().expect("run ffstat")
}

fn records(out: &Output) -> Vec<serde_json::Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).expect("json line")).collect()
}

#[test]
fn rmt_estimate_within_three_sigma() {
    let out = ffstat(&["rmt", "--N", "3", "--k", "4", "--samples", "10000", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert!(recs[0]["data"]["z"].as_f64().unwrap() <= 3.0);
    assert_eq!(recs.last().unwrap()["kind"], "summary");
}

#[test]
fn exit_codes() {
    assert_eq!(ffstat(&["variance-si", "--q", "6", "--n", "4"]).status.code(), Some(2));
    assert_eq!(ffstat(&["variance-si", "--q", "5", "--n", "4", "--alpha", "lambda"]).status.code(), Some(2));
    assert_eq!(ffstat(&["variance-si", "--q", "13", "--n", "9", "--h", "0"]).status.code(), Some(3));
    assert_eq!(ffstat(&["--char-budget", "10", "variance-si", "--q", "5", "--n", "5", "--h", "0", "--spectral", "always"]).status.code(), Some(3));
    assert_eq!(ffstat(&["lfunc", "--q", "5", "--modulus", "t^3"]).status.code(), Some(0));
}

#[test]
fn spectral_is_skipped_over_budget() {
    let out = ffstat(&["--char-budget", "10", "variance-si", "--q", "5", "--n", "5", "--h", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert!(recs[0]["data"]["var_spec"].is_null());
    assert!(recs[0]["data"]["var_bf"]["num"].is_number());
}

#[test]
fn identical_runs_are_byte_identical() {
    let args = ["variance-ap", "--q", "5", "--n", "3,4", "--modulus", "split:2", "t^2", "--alpha", "mu2"];
    let a = ffstat(&args);
    let b = ffstat(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn csv_has_header_and_rows() {
    let out = ffstat(&["--format", "csv", "hall", "--q", "3", "--h", "0..2", "--what", "singular"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("config_hash,"));
    assert_eq!(lines.len(), 1 + 3 + 2);
    assert!(lines[1..4].iter().all(|l| l.contains(",true,")));
}
