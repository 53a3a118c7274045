use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn explorer(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_explorer"))
        .args(args)
        .env_remove("TORIC_MLD_CAP")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn mld_reads_stdin() {
    let out = explorer(&["mld", "-"], Some(r#"{"lattice": {"generators": [[1,0],[0,1],["1/3","1/3"]]}, "rays": [[1,0],[0,1]]}"#));
    assert!(out.status.success());
    let report = json(&out);
    assert_eq!(report["value"], "2/3");
    assert_eq!(report["witness"], serde_json::json!(["1/3", "1/3"]));
}

#[test]
fn sweep_writes_spectrum_and_records() {
    let dir = tempfile::tempdir().unwrap();
    let spectrum = dir.path().join("spectrum.json");
    let records = dir.path().join("records.csv");
    let out = explorer(
        &["sweep", "--dim", "2", "--rmax", "20", "--window", "0:1", "--out", spectrum.to_str().unwrap(), "--records", records.to_str().unwrap()],
        None,
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_str(&fs::read_to_string(&spectrum).unwrap()).unwrap();
    assert_eq!(report["r2"], 20);
    let csv = fs::read_to_string(&records).unwrap();
    assert!(csv.starts_with("r,weights,dim,mld,witness,cartier_index,boundary,quasi_reflection"));
}

#[test]
fn config_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    fs::write(&config, r#"{"dim": 2, "rmax": 12, "window": ["[1,1]"]}"#).unwrap();
    let out = explorer(&["--config", config.to_str().unwrap(), "index-table"], None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = json(&out);
    assert_eq!(rows.as_array().unwrap().len(), 1);
}

#[test]
fn cap_exceeded_exits_3() {
    let out = explorer(&["--cap", "10", "sweep", "--rmax", "11"], None);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn aut_rejects_foreign_generator_with_exit_2() {
    let request = r#"{"rays": [[1,0],[1,2]], "generators": [{"g": [[0,1],[1,0]], "t": [0,0]}]}"#;
    let out = explorer(&["aut", "-"], Some(request));
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn bad_rational_exits_1() {
    let out = explorer(&["sweep", "--rmax", "1/0"], None);
    assert_eq!(out.status.code(), Some(1));
}
