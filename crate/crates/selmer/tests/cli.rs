use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn selmer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_selmer")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("selmer-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn census_odd_1_5() {
    let v = json(&selmer(&["census", "--model", "odd", "--n", "1", "--q", "5"]));
    assert_eq!(v["regular"], 3000);
    assert_eq!(v["total"], 3125);
    assert_eq!(v["group_order"], 120);
    assert_eq!(v["config"]["q"], 5);
    assert!(v["version"].is_string());
    assert!(v["runtime_ms"].is_u64());
}

#[test]
fn mass_so3_at_3_is_exact() {
    let v = json(&selmer(&["mass", "--group", "so3", "--q", "3"]));
    assert_eq!(v["prediction"], "1/8");
    assert_eq!(v["closed_form"], "1/8");
    assert_eq!(v["within"], true);
}

#[test]
fn csv_output_has_a_header_and_one_row() {
    let out = selmer(&["mass", "--group", "so3", "--q", "5", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().unwrap().clone();
    let rows: Vec<_> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 1);
    let col = header.iter().position(|h| h == "prediction").unwrap();
    assert_eq!(&rows[0][col], "1/48");
}

#[test]
fn output_is_deterministic_apart_from_runtime() {
    let args = ["mc-regular", "--model", "odd", "--n", "1", "--q", "5", "--d", "2", "--samples", "2000", "--seed", "9"];
    let mut a = json(&selmer(&args));
    let mut b = json(&selmer(&args));
    a.as_object_mut().unwrap().remove("runtime_ms");
    b.as_object_mut().unwrap().remove("runtime_ms");
    assert_eq!(a, b);
    let mut jobs = args.to_vec();
    jobs.extend(["--jobs", "3"]);
    let mut c = json(&selmer(&jobs));
    c.as_object_mut().unwrap().remove("runtime_ms");
    assert_eq!(a, c);
}

#[test]
fn out_flag_writes_the_report() {
    let path = scratch("census.json");
    let out = selmer(&["census", "--model", "odd", "--n", "1", "--q", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["regular"], 3000);
}

#[test]
fn config_file_sits_between_flags_and_defaults() {
    let path = scratch("run.conf");
    std::fs::write(&path, "# census settings\nmodel = odd\nq = 7\nseed = 12\n").unwrap();
    let conf = path.to_str().unwrap();
    let from_file = json(&selmer(&["census", "--config", conf, "--n", "1"]));
    assert_eq!(from_file["config"]["q"], 7);
    assert_eq!(from_file["config"]["seed"], 12);
    let flagged = json(&selmer(&["census", "--config", conf, "--n", "1", "--q", "5"]));
    assert_eq!(flagged["config"]["q"], 5);
    assert_eq!(flagged["config"]["seed"], 12);
    assert_eq!(flagged["regular"], 3000);
    let defaults = json(&selmer(&["mass", "--group", "so3", "--q", "3"]));
    assert_eq!(defaults["config"]["seed"], 0);
    assert_eq!(defaults["config"]["cutoff"], 60);
}

#[test]
fn exit_codes() {
    assert_eq!(selmer(&["census", "--model", "odd", "--n", "1", "--q", "3"]).status.code(), Some(2));
    assert_eq!(selmer(&["census", "--model", "odd", "--n", "2", "--q", "7", "--budget", "10"]).status.code(), Some(2));
    assert_eq!(selmer(&["census", "--bogus"]).status.code(), Some(64));
    assert_eq!(selmer(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(selmer(&["census", "--q", "five"]).status.code(), Some(64));
    assert_eq!(selmer(&["--help"]).status.code(), Some(0));
    assert_eq!(selmer(&["--version"]).status.code(), Some(0));
}

#[test]
fn bad_config_lines_are_usage_errors() {
    let path = scratch("broken.conf");
    std::fs::write(&path, "q 5\n").unwrap();
    let out = selmer(&["census", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(64));
}
