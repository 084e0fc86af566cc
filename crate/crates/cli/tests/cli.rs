use std::path::PathBuf;
use std::process::{Command, Output};

use tropjac::curve::CurveFile;
use tropjac::intersect::DivisorTerm;
use tropjac::TropicalCurve;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropjac")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn validate_line() {
    let o = run(&["validate", &data("line.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "balanced: true");
}

#[test]
fn validate_unbalanced_is_a_refusal() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"vertices":[["0","0"]],"rays":[{"v":0,"dir":[1,0],"w":1},{"v":0,"dir":[0,1],"w":1}]}"#).unwrap();
    let o = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("residual (1, 1)"));
}

#[test]
fn bezout_by_degree() {
    let o = run(&["bezout", "--deg", "2", "3"]);
    assert_eq!(stdout(&o).trim(), "6");
    let o = run(&["bezout", &data("conic-l.json"), &data("conic-m.json"), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["degree"], 2);
}

#[test]
fn equiv_refusals_and_verdicts() {
    for curve in ["theta.json", "non-reduced.json"] {
        let o = run(&["equiv", &data(curve), &data("origin.json"), &data("origin.json")]);
        assert_eq!(o.status.code(), Some(1), "{curve}");
    }
    let o = run(&["equiv", &data("theta.json"), &data("origin.json"), &data("origin.json")]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("bunch is not a bouquet"));
    let o = run(&["equiv", &data("triangle.json"), &data("P.json"), &data("Q.json"), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["equivalent"], false);
    let o = run(&["equiv", &data("triangle.json"), &data("ray-a.json"), &data("ray-b.json")]);
    assert!(stdout(&o).starts_with("equivalent: true"));
}

#[test]
fn input_errors_exit_2_and_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"vertices":[["0","0"]],"rays":[{"v":0,"dir":[1,0],"w":"one"}]}"#).unwrap();
    let o = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("rays[0].w"));
    assert_eq!(run(&["validate", "/no/such/file.json"]).status.code(), Some(2));
    assert_eq!(run(&["validate", "--bogus"]).status.code(), Some(2));
    let o = run(&["jacobi", &data("triangle.json"), &data("ray-a.json")]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["jacobi", &data("line.json"), &data("P.json")]);
    assert_eq!(o.status.code(), Some(2), "P is not on the line");
}

#[test]
fn intersect_json_round_trips() {
    let o = run(&["intersect", "--json", &data("conic-host.json"), &data("conic-l.json")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let terms: Vec<DivisorTerm> = serde_json::from_value(v["divisor"].clone()).unwrap();
    assert_eq!(terms.len(), 3);
    assert_eq!(v["degree"], 3);
    let oracle = run(&["intersect", "--json", "--oracle", "2,1", &data("conic-host.json"), &data("conic-l.json")]);
    assert_eq!(oracle.stdout, o.stdout);
}

#[test]
fn from_poly_emits_a_curve_file() {
    let o = run(&["from-poly", "0 + x + y"]);
    let file: CurveFile = serde_json::from_slice(&o.stdout).unwrap();
    let c = TropicalCurve::try_from(&file).unwrap();
    assert!(c.same_up_to_relabeling(&tropjac::fixtures::tropical_line()));
    let min = run(&["from-poly", "--convention", "min", "0 + x + y"]);
    assert_ne!(min.stdout, o.stdout);
    assert_eq!(run(&["from-poly", "0 + x^-1"]).status.code(), Some(2));
    assert_eq!(run(&["from-poly", "3*x"]).status.code(), Some(1));
}

#[test]
fn bunch_and_jacobi_outputs() {
    let o = run(&["bunch", "--json", &data("dumbbell.json")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["genus"], 2);
    assert_eq!(v["edges"][3], "tentacle");
    let o = run(&["bunch", &data("theta.json")]);
    assert!(stdout(&o).contains("bouquet: no"));
    let o = run(&["jacobi", "--json", &data("figure-eight.json")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["lengths"], serde_json::json!(["3", "3"]));
}

#[test]
fn sigma_and_walk() {
    let o = run(&["sigma", "--json", &data("triangle.json"), &data("conic-l.json")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["degree"], 3);
    let o = run(&["walk", &data("triangle.json"), &data("line.json"), "--steps", "20", "--seed", "3"]);
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 21);
    assert!(lines.iter().all(|l| l["sigma"] == lines[0]["sigma"]));
}

#[test]
fn render_outputs() {
    let o = run(&["render", &data("line.json")]);
    let svg = stdout(&o);
    assert_eq!(svg.matches("<line").count(), 3);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.svg");
    let o = run(&["intersect", &data("conic-host.json"), &data("conic-l.json"), "--svg", path.to_str().unwrap()]);
    let plain = run(&["intersect", &data("conic-host.json"), &data("conic-l.json")]);
    assert_eq!(o.stdout, plain.stdout, "rendering must not change the analysis output");
    assert_eq!(std::fs::read_to_string(&path).unwrap().matches("<text").count(), 3);
    let o = run(&["render", "--bunch", "--newton", &data("tailed.json")]);
    assert!(stdout(&o).contains("#d95f02"));
}
