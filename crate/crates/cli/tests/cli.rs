use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphgeom")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn status_of(v: &Value, id: &str) -> String {
    v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == id)
        .unwrap_or_else(|| panic!("no check {id}"))["status"]
        .as_str()
        .unwrap()
        .to_string()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn spectrum_of_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let tri = write(dir.path(), "tri.txt", "0 1\n1 2\n2 0\n");
    let out = run(&["spectrum", &tri]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["all_pass"], true);
    let report = &v["data"]["report"];
    assert_eq!(report["diagonalizable"], "yes");
    assert_eq!(report["certificate"]["charpoly_2L"], serde_json::json!(["0", "36", "-12", "1"]));
    let text = run(&["spectrum", &tri, "--format", "text"]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("{6(2), 2(3), 0}"));
}

#[test]
fn spectrum_of_paw_is_not_diagonalizable() {
    let dir = tempfile::tempdir().unwrap();
    let paw = write(dir.path(), "paw.txt", "0 1\n1 2\n2 0\n0 3\n");
    let v = json(&run(&["spectrum", &paw]));
    assert_eq!(v["data"]["report"]["diagonalizable"], "no");
}

#[test]
fn spectrum_of_disconnected_graph_reports_components() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "split.txt", "0 1\n1 2\n2 0\n3 4\n");
    let out = run(&["spectrum", &g]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["data"]["connected"], false);
    assert_eq!(v["data"]["components"].as_array().unwrap().len(), 2);
}

#[test]
fn spectrum_rejects_bad_files() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "loop.txt", "0 1\n2 2\n");
    let out = run(&["spectrum", &g]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let one_way = write(dir.path(), "arrow.txt", "0 -> 1\n");
    assert_eq!(run(&["spectrum", &one_way]).status.code(), Some(2));
}

#[test]
fn verify_maurer_cartan_on_s3() {
    let out = run(&["verify", "--group", "sym:3", "--gens", "102,210,021", "--connection", "maurer-cartan"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(status_of(&v, "braid"), "pass");
    assert_eq!(status_of(&v, "metric-compat"), "pass");
    assert_eq!(status_of(&v, "curvature-free"), "pass");
    assert_eq!(status_of(&v, "torsion-free"), "fail");
    assert_eq!(status_of(&v, "ricci-closed-form"), "pass");
    assert_eq!(v["data"]["ricci_scalar"], serde_json::json!(["-3", "-3", "-3", "-3", "-3", "-3"]));

    let restricted = run(&[
        "verify", "--group", "sym:3", "--gens", "102,210,021", "--connection", "maurer-cartan",
        "--checks", "braid,metric-compat,curvature-free",
    ]);
    assert_eq!(restricted.status.code(), Some(0));
    assert_eq!(json(&restricted)["checks"].as_array().unwrap().len(), 3);
    let unknown = run(&["verify", "--group", "sym:3", "--gens", "102,210,021", "--connection", "maurer-cartan", "--checks", "nonsense"]);
    assert_eq!(unknown.status.code(), Some(1));
}

#[test]
fn verify_canonical_is_not_compatible() {
    let dir = tempfile::tempdir().unwrap();
    let tri = write(dir.path(), "tri.txt", "0 1\n1 2\n2 0\n");
    let out = run(&["verify", "--graph", &tri]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(status_of(&v, "metric-compat"), "fail");
    assert_eq!(status_of(&v, "braid"), "pass");
    assert_eq!(v["data"]["omega2_dimension"], 0);
}

#[test]
fn verify_abelian_maurer_cartan_is_torsion_free() {
    let out = run(&["verify", "--group", "cyclic:6", "--gens", "1,3,5", "--connection", "maurer-cartan"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(status_of(&v, "torsion-free"), "pass");
    assert_eq!(status_of(&v, "cotorsion-free"), "pass");
}

#[test]
fn verify_reads_metric_and_connection_files() {
    let dir = tempfile::tempdir().unwrap();
    let sq = write(dir.path(), "square.txt", "0 1\n1 2\n2 3\n3 0\n");
    let mut sigma = Vec::new();
    for x in 0..4i32 {
        for s in [1, 3] {
            for t in [1, 3] {
                let (y, z) = ((x + s) % 4, (x + s + t) % 4);
                sigma.push(format!("[{x},{y},{z},{},\"1\"]", (x + t) % 4));
            }
        }
    }
    let conn = write(dir.path(), "conn.json", &format!("{{\"sigma\": [{}]}}", sigma.join(",")));
    let met = write(
        dir.path(),
        "metric.json",
        r#"{"weights": [[0,1,"1"],[1,0,"1"],[1,2,"1"],[2,1,"1"],[2,3,"1"],[3,2,"1"],[3,0,"1"],[0,3,"1"]]}"#,
    );
    let out = run(&["verify", "--graph", &sq, "--connection", &conn, "--metric", &met]);
    let v = json(&out);
    assert_eq!(status_of(&v, "metric-compat"), "pass");
    assert_eq!(status_of(&v, "braid"), "pass");
    let bad = write(dir.path(), "bad.json", r#"{"sigma": [[0,2,0,2,"1"]]}"#);
    assert_eq!(run(&["verify", "--graph", &sq, "--connection", &bad]).status.code(), Some(2));
}

#[test]
fn cayley_bundles() {
    let dir = tempfile::tempdir().unwrap();
    let emit = dir.path().join("bundle");
    let out = run(&["cayley", "cyclic:6", "--gens", "1,3,5", "--emit", emit.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let m = v["data"]["invariant_laplacian"]["matrix"].as_array().unwrap();
    assert!(m.iter().flat_map(|r| r.as_array().unwrap()).all(|e| e == "0"));
    assert_eq!(status_of(&v, "character-rank-agreement"), "pass");
    let graph = emit.join("graph.txt");
    let conn = emit.join("connection.json");
    assert!(graph.exists() && conn.exists());
    let again = run(&["verify", "--graph", graph.to_str().unwrap(), "--connection", conn.to_str().unwrap()]);
    assert_eq!(again.status.code(), Some(0));

    let v = json(&run(&["cayley", "sym:3", "--gens", "102,210,021"]));
    assert_eq!(v["data"]["invariant_laplacian"]["integer_eigenvalues"], serde_json::json!([["6", 2], ["0", 1]]));
    assert_eq!(status_of(&v, "character-eigenvectors"), "skipped");
}

#[test]
fn cayley_rejects_bad_generators() {
    let out = run(&["cayley", "cyclic:5", "--gens", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not closed under inverse"));
}

#[test]
fn cayley_from_table_file() {
    let dir = tempfile::tempdir().unwrap();
    let table = write(dir.path(), "z4.csv", "*,e,a,b,c\ne,e,a,b,c\na,a,b,c,e\nb,b,c,e,a\nc,c,e,a,b\n");
    let out = run(&["cayley", "--table", &table, "--gens", "a,c"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["data"]["group"]["order"], 4);
}

#[test]
fn calculus_and_mgon() {
    let dir = tempfile::tempdir().unwrap();
    let paw = write(dir.path(), "paw.txt", "0 1\n1 2\n2 0\n0 3\n");
    let out = run(&["calculus", &paw, "--samples", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(status_of(&json(&out), "extended-leibniz"), "pass");
    let directed = write(dir.path(), "dir.txt", "0 -> 1\n1 -> 2\n");
    let v = json(&run(&["calculus", &directed]));
    assert_eq!(status_of(&v, "leibniz"), "pass");
    assert_eq!(status_of(&v, "extended-leibniz"), "skipped");

    let v = json(&run(&["mgon", "6"]));
    assert_eq!(v["all_pass"], true);
    assert_eq!(v["data"]["mgon"]["report"]["diagonalizable"], "no");
    assert_eq!(run(&["mgon", "2"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let paw = write(dir.path(), "paw.txt", "0 1\n1 2\n2 0\n0 3\n");
    let a = run(&["calculus", &paw, "--seed", "7"]);
    let b = run(&["calculus", &paw, "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    let out = dir.path().join("report.json");
    let c = run(&["calculus", &paw, "--seed", "7", "--out", out.to_str().unwrap()]);
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(&out).unwrap(), a.stdout);
}

#[test]
fn tolerance_must_be_positive() {
    assert_eq!(run(&["mgon", "4", "--tol", "0"]).status.code(), Some(2));
    assert_eq!(run(&["mgon", "4", "--tol", "1e-6"]).status.code(), Some(0));
}
