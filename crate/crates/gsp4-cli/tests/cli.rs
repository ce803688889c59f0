use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn gsp4(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gsp4")).args(args).output().expect("binary runs")
}

fn json_out(args: &[&str]) -> Value {
    let out = gsp4(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn batch(lines: &str) -> Output {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(lines.as_bytes()).unwrap();
    gsp4(&["batch", file.path().to_str().unwrap()])
}

#[test]
fn springer_block_three() {
    let v = json_out(&["springer", "--l", "3"]);
    assert_eq!(v["det"], "-c234*A32*A43");
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn admissible_set_of_zero() {
    let v = json_out(&["adm", "--lambda", "0,0;0"]);
    assert_eq!(v["elements"], serde_json::json!(["e"]));
}

#[test]
fn exit_codes() {
    assert_eq!(gsp4(&["--p", "36", "adm", "--lambda", "0,0;0"]).status.code(), Some(1));
    assert_eq!(gsp4(&["nosuchcommand"]).status.code(), Some(1));
    assert_eq!(gsp4(&["adm", "--lambda", "1,2"]).status.code(), Some(1));
    // μ = (1,0;0) is far from 4-generic
    let out = gsp4(&["wq", "--s", "e", "--mu", "1,0;0"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "precondition");
}

#[test]
fn empty_batch() {
    let out = batch("");
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
}

#[test]
fn batch_isolates_failures_and_matches_single_runs() {
    let out = batch(concat!(
        r#"{"command":"springer","payload":{"l":3}}"#,
        "\n",
        r#"{"command":"adm","payload":{"lambda":"1,2"}}"#,
        "\n",
        r#"{"command":"adm","p":37,"payload":{"lambda":"2,1;0","reg":true}}"#,
        "\n",
    ));
    assert!(out.status.success());
    let lines: Vec<Value> =
        String::from_utf8(out.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[1]["error"], "parse");
    let mut first = lines[0].clone();
    first.as_object_mut().unwrap().remove("line");
    assert_eq!(first, json_out(&["springer", "--l", "3"]));
    let mut third = lines[2].clone();
    third.as_object_mut().unwrap().remove("line");
    assert_eq!(third, json_out(&["--p", "37", "adm", "--lambda", "2,1;0", "--reg"]));
}

#[test]
fn seeded_runs_are_deterministic() {
    let args = ["--seed", "7", "chart", "--z", "t(1,0;1)", "--h", "3"];
    assert_eq!(json_out(&args), json_out(&args));
}
