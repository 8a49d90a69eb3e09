use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn gcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcoh")).args(args).env_remove("GCOH_MAX_SUBGRAPHS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

fn write_graph(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn cohomology_reports() {
    let k3 = json(&gcoh(&["cohomology", &path("k3.json")]));
    assert_eq!(k3["h1"]["divisors"], serde_json::json!(["162"]));
    assert_eq!(k3["h1"]["rank"], 0);

    let edge = json(&gcoh(&["cohomology", &path("edge.json")]));
    assert_eq!(edge["h0"]["rank"], 1);
    assert_eq!(edge["h1"]["divisors"], serde_json::json!(["2"]));

    let empty = json(&gcoh(&["cohomology", &path("empty.json")]));
    assert_eq!(empty, serde_json::json!({"h0": {"rank": 0, "divisors": []}, "h1": {"rank": 0, "divisors": []}}));
}

#[test]
fn forest_reports() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("k3.dot");
    let f = json(&gcoh(&["forest", &path("k3.json"), "--prime", "3", "--dot", dot.to_str().unwrap()]));
    assert_eq!(f["nodes"].as_array().unwrap().len(), 4);
    assert_eq!(f["torsion_exponents"], serde_json::json!([4]));
    let dot = std::fs::read_to_string(dot).unwrap();
    assert!(dot.starts_with("digraph forest {"));
    assert!(dot.contains("({B,G,R}, 4)"));

    let triangle = write_graph(
        &dir,
        "t.json",
        r#"{"vertices":[{"id":"a","weight":"1"},{"id":"b","weight":"1"},{"id":"c","weight":"1"}],
            "edges":[["a","b"],["b","c"],["a","c"]]}"#,
    );
    let t = json(&gcoh(&["forest", &triangle, "--prime", "3"]));
    assert!(t["nodes"].as_array().unwrap().is_empty());

    let b = json(&gcoh(&["forest", &path("edge.json"), "--prime", "2"]));
    assert_eq!(b["infinite_components"].as_array().unwrap().len(), 1);
}

#[test]
fn torsion_report() {
    let t = json(&gcoh(&["torsion", &path("k3.json"), "--prime", "3"]));
    assert_eq!(t["order"], "162");
    assert_eq!(t["exponents"], serde_json::json!([4]));
    assert_eq!(gcoh(&["torsion", &path("k3.json"), "--prime", "6"]).status.code(), Some(2));
}

#[test]
fn tropical_commands() {
    let v = gcoh(&["tropical", &path("k3.json"), "--eval", &path("k3_vals.json")]);
    assert!(v.status.success());
    assert_eq!(stdout(&v).trim(), "4");

    let k4 = gcoh(&["tropical", &path("k4.json"), "--complete-formula"]);
    assert!(k4.status.success());
    assert_eq!(stdout(&k4).lines().next(), Some("σ₁¹ ⊙ σ₃"));

    let expr = gcoh(&["tropical", &path("k3.json")]);
    assert!(stdout(&expr).contains("max("));

    let missing = gcoh(&["tropical", &path("k3.json"), "--eval", &path("k3_missing.json")]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("`B`"));
}

#[test]
fn tropical_caps() {
    let small = gcoh(&["tropical", &path("k4.json"), "--max-vertices", "3"]);
    assert_eq!(small.status.code(), Some(3));
    let env = Command::new(env!("CARGO_BIN_EXE_gcoh"))
        .args(["tropical", &path("k3.json")])
        .env("GCOH_MAX_SUBGRAPHS", "2")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&env.stderr).contains("GCOH_MAX_SUBGRAPHS"));
}

#[test]
fn core_and_spanning_tree() {
    let c = json(&gcoh(&["core", &path("k3.json"), "--prime", "3"]));
    assert_eq!(c["edges"], serde_json::json!(["B~G", "G~R"]));

    let dir = tempfile::tempdir().unwrap();
    let square = write_graph(
        &dir,
        "sq.json",
        r#"{"vertices":[{"id":"a","weight":"1"},{"id":"b","weight":"3"},{"id":"c","weight":"9"},{"id":"d","weight":"3"}],
            "edges":[["a","b"],["b","c"],["c","d"],["d","a"]]}"#,
    );
    let t = json(&gcoh(&["spanning-tree", &square, "--prime", "3"]));
    assert_eq!(t["edges"].as_array().unwrap().len(), 3);
    assert!(t["exponent"].is_u64());
}

#[test]
fn bad_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_graph(&dir, "bad.json", "{");
    let o = gcoh(&["cohomology", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: parse error"));
    assert_eq!(gcoh(&["cohomology", "/nonexistent/graph.json"]).status.code(), Some(2));
    let zero = write_graph(&dir, "zero.json", r#"{"vertices":[{"id":"x","weight":"0"}],"edges":[]}"#);
    assert_eq!(gcoh(&["cohomology", &zero]).status.code(), Some(2));
}

#[test]
fn verify_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = gcoh(&[
            "verify", "--instances", "15", "--max-vertices", "5", "--seed", "9", "--parallelism", "2", "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        (stdout(&o), std::fs::read(out).unwrap())
    };
    let (a, ra) = run("a.json");
    let (b, rb) = run("b.json");
    assert_eq!(a, b);
    assert_eq!(ra, rb);
    assert_eq!(a.lines().filter(|l| l.starts_with("PASS")).count(), 13);
    let report: Value = serde_json::from_slice(&ra).unwrap();
    assert_eq!(report["config"]["instanceCount"], 15);
}
