use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_statespace")).args(args).output().expect("spawn statespace")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn gen(dir: &TempDir, spec: &str, name: &str) -> PathBuf {
    let path = dir.path().join(name);
    let out = run(&["gen", spec, "-o", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_square() {
    let dir = TempDir::new().unwrap();
    let sq = write(&dir, "square.json", r#"{"dim":2,"vertices":[[0,0],[1,0],[0,1],[1,1]]}"#);
    let r = json(&run(&["analyze", s(&sq), "--trials", "20"]));
    assert_eq!(r["report_version"], 1);
    assert_eq!(r["automorphism_order"], 8);
    assert_eq!(r["vertex_transitive"], true);
    assert_eq!(r["max_distinguishable"]["k"], 2);
    assert_eq!(r["decomposability"]["decomposable"], false);
    assert_eq!(r["classification"]["label"], "VertexTransitivePolytope");
    assert_eq!(r["fixed_point"]["point"], serde_json::json!(["1/2", "1/2"]));
}

#[test]
fn analyze_tetrahedron() {
    let dir = TempDir::new().unwrap();
    let t = gen(&dir, "simplex(3)", "t.json");
    let r = json(&run(&["analyze", s(&t), "--trials", "20"]));
    assert_eq!(r["automorphism_order"], 24);
    assert_eq!(r["max_distinguishable"]["k"], 4);
    assert_eq!(r["decomposability"]["decomposable"], true);
    assert_eq!(r["classification"]["label"], "Simplex(3)");
}

#[test]
fn analyze_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let h = gen(&dir, "polygon(6)", "h.json");
    let a = run(&["analyze", s(&h), "--seed", "5", "--trials", "30"]);
    let b = run(&["analyze", s(&h), "--seed", "5", "--trials", "30"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn text_format() {
    let dir = TempDir::new().unwrap();
    let sq = gen(&dir, "cube(2)", "sq.json");
    let out = run(&["analyze", s(&sq), "--format", "text", "--trials", "10"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("automorphism order    8"), "{text}");
}

#[test]
fn malformed_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", r#"{"dim":2,"vertices":[[0,0],[1]]}"#);
    assert_eq!(run(&["analyze", s(&bad)]).status.code(), Some(2));
    let junk = write(&dir, "junk.json", "not json");
    assert_eq!(run(&["analyze", s(&junk)]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "/nonexistent/file.json"]).status.code(), Some(2));
}

#[test]
fn degenerate_input_exits_3() {
    let dir = TempDir::new().unwrap();
    let line = write(&dir, "line.json", r#"{"dim":2,"vertices":[[0,0],[1,1],[2,2]]}"#);
    let out = run(&["analyze", s(&line)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not full-dimensional"));
}

#[test]
fn distinguish_opposite_corners() {
    let dir = TempDir::new().unwrap();
    let sq = gen(&dir, "cube(2)", "sq.json");
    let yes = json(&run(&["distinguish", s(&sq), "--points", "[[1,1],[-1,-1]]"]));
    assert_eq!(yes["distinguishable"], true);
    assert!(yes["certificate"]["effects"].is_array());
    let no = json(&run(&["distinguish", s(&sq), "--points", "[[1,1],[-1,1],[-1,-1]]"]));
    assert_eq!(no["distinguishable"], false);
}

#[test]
fn gen_then_decompose_barycenter() {
    let dir = TempDir::new().unwrap();
    let tri = gen(&dir, "simplex(2)", "tri.json");
    let r = json(&run(&["decompose", s(&tri), "--point", r#"["1/3","1/3"]"#]));
    assert_eq!(r["decomposable"], true);
    let terms = r["decompositions"][0].as_array().unwrap();
    assert_eq!(terms.len(), 3);
    assert!(terms.iter().all(|t| t["weight"] == "1/3"));
}

#[test]
fn cylinder_interior_point_is_not_decomposable() {
    let r = json(&run(&["model", "cylinder", "decompose", "--point", "0,0,0.25"]));
    assert_eq!(r["decomposable"], false);
    assert!(r["decomposition"].is_null());
    let out = run(&["model", "cylinder", "decompose", "--point", "0,0,0.25", "--format", "text"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("not decomposable"));
}

#[test]
fn ball_report_holds() {
    let r = json(&run(&["model", "ball", "--dim", "3", "report"]));
    assert_eq!(r["report_version"], 1);
}

#[test]
fn verify_default_corpus_passes() {
    let out = run(&["verify", "--trials", "20"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}
