use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_uniserial"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, value: &Value) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, serde_json::to_string(value).unwrap()).unwrap();
    path
}

fn read(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn spec(blocks: &[(&str, usize)]) -> Value {
    Value::Array(blocks.iter().map(|(e, s)| json!({"eigenvalue": e, "size": s})).collect())
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn exists_on_three_nested_blocks() {
    let dir = TempDir::new().unwrap();
    let s = write(&dir, "spec.json", &spec(&[("1", 7), ("1", 5), ("1", 3)]));
    let out = run(&["exists", p(&s)]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["exists"], json!(true));
}

#[test]
fn exists_refuses_with_reason() {
    let dir = TempDir::new().unwrap();
    let s = write(&dir, "spec.json", &spec(&[("1", 3), ("2", 2)]));
    let out = run(&["exists", p(&s)]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["exists"], json!(false));
    assert_eq!(v["reason"]["case"], json!("refused"));
}

#[test]
fn cg_exponents() {
    let out = run(&["cg", "-p", "3", "-q", "5"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["exponents"], json!([7, 5, 3]));
}

#[test]
fn construct_verify_classify_round_trip() {
    let dir = TempDir::new().unwrap();
    let label = json!({"variant": "KX", "alpha": "1/2", "lambda": "-2", "n": 5, "k": 3,
        "X": {"rows": 2, "cols": 2, "entries": [["1", "0"], ["3", "-1"]]}});
    let l = write(&dir, "label.json", &label);
    let rep = dir.path().join("rep.json");
    assert!(run(&["construct", "--label", p(&l), "-o", p(&rep)]).status.success());

    let verdict = dir.path().join("verdict.json");
    assert!(run(&["verify", p(&rep), "-o", p(&verdict)]).status.success());
    let v = read(&verdict);
    assert_eq!(v["ok"], json!(true));
    assert_eq!(v["faithful"], json!(true));
    assert_eq!(v["uniserial"], json!(true));

    let classified = dir.path().join("label_out.json");
    assert!(run(&["classify", p(&rep), "--seed", "17", "-o", p(&classified)]).status.success());
    assert_eq!(read(&classified)["label"], label);
}

#[test]
fn broken_representation_reports_violations() {
    let dir = TempDir::new().unwrap();
    let l = write(&dir, "label.json", &json!({"variant": "TOP", "alpha": "0", "lambda": "1", "n": 3}));
    let out = run(&["construct", "--label", p(&l)]);
    let mut rep = stdout_json(&out);
    rep["generators"][0]["entries"][0][1] = json!("5");
    let r = write(&dir, "rep.json", &rep);
    let out = run(&["verify", p(&r)]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["ok"], json!(false));
    assert!(!v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn extensions_with_params_builds_representation() {
    let dir = TempDir::new().unwrap();
    let s = write(&dir, "spec.json", &spec(&[("1", 7), ("1", 5), ("1", 3)]));
    let out = run(&["extensions", p(&s), "--k", "3", "--alpha", "0"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert!(v["extension"].is_null());
    let slots = v["space"]["slots"].as_array().unwrap();
    assert!(!slots.is_empty());

    let mut params: Vec<Value> = slots
        .iter()
        .map(|s| json!({"block": s["block"], "generator": s["generator"], "power": s["power"], "value": "1"}))
        .collect();
    params.truncate(3);
    let pf = write(&dir, "params.json", &Value::Array(params));
    let out = run(&["extensions", p(&s), "--k", "3", "--alpha", "0", "--params", p(&pf)]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let rep = write(&dir, "rep.json", &v["extension"]["representation"]);
    let verdict = stdout_json(&run(&["verify", p(&rep)]));
    assert_eq!(verdict["ok"], json!(true));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(run(&["exists", p(&missing)]).status.code(), Some(2));

    let garbage = dir.path().join("garbage.json");
    fs::write(&garbage, "{not json").unwrap();
    assert_eq!(run(&["verify", p(&garbage)]).status.code(), Some(2));

    assert_eq!(run(&["cg", "-p", "x"]).status.code(), Some(2));

    let diag = write(&dir, "diag.json", &spec(&[("1", 1)]));
    assert_eq!(run(&["exists", p(&diag)]).status.code(), Some(3));

    let mixed = write(&dir, "mixed.json", &spec(&[("1", 3), ("2", 1)]));
    let out = run(&["extensions", p(&mixed), "--k", "2", "--alpha", "0"]);
    assert_eq!(out.status.code(), Some(3));

    let bad_slot = write(&dir, "params.json", &json!([{"block": 9, "generator": 0, "power": 0, "value": "1"}]));
    let s = write(&dir, "spec.json", &spec(&[("1", 5), ("1", 3)]));
    let out = run(&["extensions", p(&s), "--k", "2", "--alpha", "0", "--params", p(&bad_slot)]);
    assert_eq!(out.status.code(), Some(2));

    // lambda = 0 builds fine but lies outside the classifier.
    let l = write(&dir, "label.json", &json!({"variant": "TOP", "alpha": "0", "lambda": "0", "n": 3}));
    let out = run(&["construct", "--label", p(&l)]);
    assert!(out.status.success());
    let r = write(&dir, "rep.json", &stdout_json(&out));
    assert_eq!(run(&["classify", p(&r)]).status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let l = write(&dir, "label.json", &json!({"variant": "AA", "alpha": "1", "lambda": "1", "n": 5, "a": ["1", "0", "2/3", "0", "-4"]}));
    let rep = dir.path().join("rep.json");
    assert!(run(&["construct", "--label", p(&l), "-o", p(&rep)]).status.success());
    let a = run(&["classify", p(&rep), "--seed", "3"]);
    let b = run(&["classify", p(&rep), "--seed", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["cg", "-p", "4", "-q", "4"]);
    let d = run(&["cg", "-p", "4", "-q", "4"]);
    assert_eq!(c.stdout, d.stdout);
}
