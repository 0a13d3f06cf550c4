use std::path::PathBuf;
use std::process::Command;

use serde_json::{json, Value};

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_hypercal")).args(args).output().expect("spawn");
    let text = String::from_utf8(out.stdout).expect("utf-8");
    let v = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{args:?}: {e}\n{text}"));
    (out.status.code().expect("exit code"), v)
}

fn raw(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_hypercal")).args(args).output().expect("spawn");
    (out.status.code().expect("exit code"), out.stdout)
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write(name: &str, v: &Value) -> String {
    let p = scratch(name);
    std::fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p.to_string_lossy().into_owned()
}

fn exported(name: &str) -> Value {
    let (code, r) = run(&["export", name]);
    assert_eq!(code, 0);
    r["result"]["document"].clone()
}

fn check<'a>(r: &'a Value, name: &str) -> &'a Value {
    r["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn validate_exported_builtin() {
    let path = write("flat1.json", &exported("flat:1"));
    let (code, r) = run(&["validate", &path]);
    assert_eq!(code, 0);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["verdict"] == "pass"));
    let (_, b) = run(&["validate", "flat:1"]);
    assert_eq!(r["model"]["sha256"], b["model"]["sha256"]);
}

#[test]
fn round_trip_every_builtin() {
    for name in ["flat:1", "flat:2", "kodaira", "iwasawa", "kodaira_double", "iwasawa_double", "hopf"] {
        let doc = exported(name);
        let path = write(&format!("rt_{}.json", name.replace(':', "_")), &doc);
        let (code, r) = run(&["export", &path]);
        assert_eq!(code, 0, "{name}");
        assert_eq!(r["result"]["document"], doc, "{name}");
    }
}

#[test]
fn unknown_key_is_parse_error() {
    let mut doc = exported("flat:1");
    doc["metricc"] = doc["metric"].clone();
    let (code, r) = run(&["validate", &write("metricc.json", &doc)]);
    assert_eq!(code, 3);
    assert_eq!(r["error"]["kind"], "parse");
    assert!(r["error"]["message"].as_str().unwrap().contains("metricc"));
}

#[test]
fn bracket_order_and_bad_files_are_parse_errors() {
    let doc = json!({"version": "hypercal/1", "kind": "lie_model", "dim": 3, "brackets": [{"i": 1, "j": 0, "k": 2, "c": 1}]});
    assert_eq!(run(&["validate", &write("order.json", &doc)]).0, 3);
    let doc = json!({"version": "hypercal/1", "kind": "lie_model", "dim": 3, "brackets": [{"i": 0, "j": 1, "k": 2, "c": 0.5}]});
    assert_eq!(run(&["validate", &write("float.json", &doc)]).0, 3);
    let p = scratch("corrupt.json");
    std::fs::write(&p, "{not json").unwrap();
    assert_eq!(run(&["report", p.to_str().unwrap()]).0, 3);
    assert_eq!(run(&["validate", "/nonexistent/model.json"]).0, 3);
}

#[test]
fn jacobi_failure_reports_triple() {
    let doc = json!({"version": "hypercal/1", "kind": "lie_model", "name": "bad", "dim": 3, "brackets": [
        {"i": 0, "j": 1, "k": 1, "c": 1}, {"i": 1, "j": 2, "k": 0, "c": 1}]});
    let (code, r) = run(&["validate", &write("jacobi.json", &doc)]);
    assert_eq!(code, 1);
    let w = &check(&r, "jacobi")["witness"];
    assert_eq!((w["i"].clone(), w["j"].clone(), w["k"].clone()), (json!(0), json!(1), json!(2)));
}

#[test]
fn weights_tables() {
    let (code, r) = run(&["weights", "flat:1", "--degree", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["multiplicities"], json!({"2": 3, "0": 3}));
    let (_, r) = run(&["weights", "flat:1", "--degree", "1"]);
    assert_eq!(r["result"]["multiplicities"], json!({"1": 4}));
    let (code, r) = run(&["weights", "flat:1", "--degree", "5"]);
    assert_eq!(code, 1);
    assert_eq!(r["model"]["name"], "flat:1");
}

#[test]
fn hkt_verdicts_and_expectations() {
    let (code, r) = run(&["hkt", "flat:1", "--metric", "random:1:10", "--expect", "hkt"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["hkt_found"], 10);
    let (code, r) = run(&["hkt", "kodaira_double", "--metric", "random:7:5", "--expect", "not-hkt"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["hkt_found"], 0);
    assert_eq!(run(&["hkt", "kodaira_double", "--metric", "random:7:5", "--expect", "hkt"]).0, 2);
    assert_eq!(run(&["hkt", "kodaira", "--metric", "random:1:1"]).0, 1);
    let (code, r) = run(&["hkt", "flat:2"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["verdicts"][0]["hyperkahler"], true);
}

#[test]
fn hkt_with_metric_file() {
    let g = exported("kodaira_double")["metric"].clone();
    let path = write("metric.json", &json!({"version": "hypercal/1", "kind": "metric", "metric": g}));
    let (code, r) = run(&["hkt", "kodaira_double", "--metric", &path, "--expect", "not-hkt"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["verdicts"][0]["defect"], 8);
    let mut bad = g.clone();
    bad[0][1] = json!(1);
    let path = write("bad_metric.json", &json!({"version": "hypercal/1", "kind": "metric", "metric": bad}));
    assert_eq!(run(&["hkt", "kodaira_double", "--metric", &path]).0, 1);
}

#[test]
fn double_command() {
    let out = scratch("kd.json");
    let (code, r) = run(&["double", "kodaira", "-o", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["dim"], 8);
    let (code, v) = run(&["validate", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["model"]["kind"], "double_model");
    assert_eq!(v["model"]["sha256"], run(&["validate", "kodaira_double"]).1["model"]["sha256"]);

    let (code, r) = run(&["double", "flat_base:1"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["document"]["brackets"], json!([]));

    let mut affine = exported("kodaira");
    // swap the images of b0 and b2
    affine["t"] = json!([[0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1]]);
    let (code, r) = run(&["double", &write("torsion.json", &affine)]);
    assert_eq!(code, 1);
    assert_eq!(check(&r, "affine")["witness"]["identity"], "torsion-freeness");

    assert_eq!(run(&["double", "flat:1"]).0, 1);
}

#[test]
fn tampered_double_fails_rebuild() {
    let mut doc = exported("kodaira_double");
    doc["split"]["horizontal"] = json!([0, 1, 2, 4]);
    let (code, r) = run(&["validate", &write("split.json", &doc)]);
    assert_eq!(code, 1);
    assert_eq!(check(&r, "double_rebuild")["verdict"], "fail");
}

#[test]
fn psi_command() {
    let (code, r) = run(&["psi", "flat:1"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["lagrangian_pairing"], 1);
    let (code, r) = run(&["psi", "kodaira_double"]);
    assert_eq!(code, 0);
    assert_eq!((r["result"]["closed"].clone(), r["result"]["lagrangian_pairing"].clone()), (json!(true), json!(2)));
    let (code, r) = run(&["psi", "hopf"]);
    assert_eq!(code, 1);
    assert_eq!(r["result"]["closed"], false);
}

#[test]
fn cohomology_command() {
    let b1 = |m: &str| run(&["cohomology", m, "--degree", "1"]).1["result"]["betti"].clone();
    assert_eq!(b1("kodaira"), 3);
    assert_eq!(b1("iwasawa"), 4);
    assert_eq!(b1("flat_base:2"), 4);
    let (_, r) = run(&["cohomology", "kodaira"]);
    assert_eq!(r["result"]["betti"], json!([1, 3, 4, 3, 1]));
    assert_eq!(run(&["cohomology", "kodaira", "--degree", "5"]).0, 1);
}

#[test]
fn reports() {
    let (code, r) = run(&["report", "flat:1", "--samples", "5"]);
    assert_eq!(code, 0);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["verdict"] == "pass"));
    assert_eq!(r["result"]["hkt_found"], 5);
    let (code, r) = run(&["report", "kodaira_double", "--samples", "10"]);
    assert_eq!(code, 0);
    let res = &r["result"];
    assert_eq!(
        (res["psi_closed"].clone(), res["hkt_found"].clone(), res["theta_positive"].clone(), res["theta_closed"].clone()),
        (json!(true), json!(0), json!(true), json!(false))
    );
}

#[test]
fn theta_command() {
    let (code, r) = run(&["theta", "flat_double:1"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["theta_closed"], true);
    assert_eq!(r["result"]["big_theta_closed"], true);
    assert_eq!(run(&["theta", "kodaira"]).0, 1);
}

#[test]
fn reports_are_byte_identical() {
    for args in [&["comass", "flat:1", "--samples", "2000", "--seed", "5"][..], &["report", "kodaira_double", "--samples", "3"]] {
        let a = raw(args);
        assert_eq!(a, raw(args), "{args:?}");
    }
    let (_, with) = run(&["validate", "flat:1", "--timings"]);
    assert!(with["timings"]["total_ms"].is_number());
    assert!(run(&["validate", "flat:1"]).1.get("timings").is_none());
}

#[test]
fn text_format() {
    let (code, out) = raw(&["weights", "flat:1", "--degree", "2", "--format", "text"]);
    assert_eq!(code, 0);
    let text = String::from_utf8(out).unwrap();
    assert!(text.starts_with("weights flat:1\n"));
    assert!(text.contains("pass clebsch_gordan"));
}
