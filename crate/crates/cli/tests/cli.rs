use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn permwit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permwit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn group_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn path(f: &tempfile::NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

#[test]
fn witness_nine() {
    let out = permwit(&["witness", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["p"], 3);
    assert_eq!(v["i"], 4);
    assert_eq!(v["verified"], true);
    let clauses = v["report"]["clauses"].as_array().unwrap();
    assert_eq!(clauses.len(), 5);
    assert!(clauses.iter().all(|c| c["passed"] == true));
    assert!(String::from_utf8_lossy(&out.stderr).contains("all clauses pass"));
}

#[test]
fn witness_without_valid_prime() {
    let out = permwit(&["witness", "15"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["status"], "no-witness");

    let out = permwit(&["witness", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["status"], "unknown-by-this-artifact");

    let out = permwit(&["witness", "15", "--prime", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("does not divide phi(15)"));
}

#[test]
fn verify_passes_on_witness_file() {
    let f = group_file(
        "# degree 6 witness\ndegree: 6\n(1 2 3 4 5 6)\n(2 6)(3 5)\n---\n(1 2 3 4 5 6)\n---\n(2 6)(3 5)\n(1 3 5)(2 4 6)\n",
    );
    let out = permwit(&["verify", path(&f)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["index_n1"], 2);
}

#[test]
fn verify_fails_when_n2_equals_n1() {
    let f = group_file("degree: 6\n(1 2 3 4 5 6)\n(2 6)(3 5)\n---\n(1 2 3 4 5 6)\n---\n(1 2 3 4 5 6)\n");
    let out = permwit(&["verify", path(&f)]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let c = v["clauses"].as_array().unwrap().iter().find(|c| c["id"] == "c").unwrap().clone();
    assert_eq!(c["passed"], false);
}

#[test]
fn malformed_file_is_input_error() {
    let f = group_file("degree: 6\n(1 2 3 4 5 6)\n---\n(1 2 2)\n---\n()\n");
    let out = permwit(&["verify", path(&f)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 4, column"), "{err}");
    assert!(out.stdout.is_empty());

    let f = group_file("degree: 6\n(1 2 3 4 5 6)\n");
    assert_eq!(permwit(&["verify", path(&f)]).status.code(), Some(2));
    assert_eq!(permwit(&["verify", "/nonexistent/file"]).status.code(), Some(2));
}

#[test]
fn census_five() {
    let out = permwit(&["census", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let orders: Vec<u64> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["order"].as_u64().unwrap())
        .collect();
    assert_eq!(orders, [5, 10, 20, 60, 120]);
    assert_eq!(v["exhaustive"], true);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    assert_eq!(v["passed"], true);
}

#[test]
fn census_options() {
    let out = permwit(&["census", "5", "--strategy", "fingerprint", "--checks", "wielandt,contain"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["strategy"], "fingerprint");
    assert_eq!(v["checks"].as_array().unwrap().len(), 2);

    assert_eq!(permwit(&["census", "5", "--strategy", "nope"]).status.code(), Some(2));
    assert_eq!(permwit(&["census", "5", "--checks", "nope"]).status.code(), Some(2));
    assert_eq!(permwit(&["census", "11"]).status.code(), Some(2));
    assert_eq!(permwit(&["census", "8"]).status.code(), Some(2));
    // 2 divides 5 - 1
    assert_eq!(permwit(&["census", "5", "--checks", "lemma-pq", "--p", "2"]).status.code(), Some(1));
}

#[test]
fn embed_degree_six() {
    let f = group_file("degree: 6\n(1 2 3 4 5 6)\n(2 6)(3 5)\n---\n(1 2 3 4 5 6)\n---\n(2 6)(3 5)\n(1 3 5)(2 4 6)\n");
    let out = permwit(&["embed", path(&f)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["embedding"]["p"], 2);
    assert_eq!(v["embedding"]["q"], 3);
}

#[test]
fn embed_rejects_non_pq_degree() {
    let f = group_file("degree: 9\n(1 2 3 4 5 6 7 8 9)\n---\n(1 2 3 4 5 6 7 8 9)\n---\n()\n");
    let out = permwit(&["embed", path(&f)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a product of two distinct primes"));
}

#[test]
fn refute_small_and_replayable() {
    let a = permwit(&["refute", "3", "5", "--samples", "300", "--seed", "4"]);
    assert_eq!(a.status.code(), Some(0));
    let b = permwit(&["refute", "3", "5", "--samples", "300", "--seed", "4"]);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["counterexamples_found"], 0);
    assert_eq!(v["status"], "consistent");
    assert_eq!(v["seed"], 4);
    assert!(v["method"].as_str().unwrap().contains("corroboration"));
}

#[test]
fn refute_hypothesis_error_points_at_witnesses() {
    let out = permwit(&["refute", "2", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("permwit witness 10 --prime 2"));
    assert_eq!(permwit(&["refute", "5", "3"]).status.code(), Some(2));
}
