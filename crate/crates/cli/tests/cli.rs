//! End-to-end tests against the compiled binary: exit codes, JSON reports,
//! file round trips.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monodromy"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        !out.stdout.is_empty(),
        "no stdout; stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn betti_of_anosov_torus() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "spec.json",
        r#"{"genus": 1, "matrix": [[2, 1], [1, 1]]}"#,
    );
    let out = run(&["betti", "--spec", &spec, "--json"], dir.path());
    assert!(out.status.success());
    let report = stdout_json(&out);
    assert_eq!(report["command"], "betti");
    assert_eq!(report["result"]["betti_one"], 1);
    assert_eq!(report["result"]["torsion"], serde_json::json!([]));
}

#[test]
fn betti_of_identity_word() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "spec.json", r#"{"genus": 2, "word": []}"#);
    let out = run(&["betti", "--spec", &spec, "--json"], dir.path());
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["result"]["betti_one"], 5);
}

#[test]
fn betti_rejects_non_symplectic_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "spec.json",
        r#"{"genus": 1, "matrix": [[1, 1], [0, 2]]}"#,
    );
    let out = run(&["betti", "--spec", &spec], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("symplectic"));
}

#[test]
fn betti_reports_parse_context() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "spec.json", "{\"genus\": 1,\n  \"matrix\": [[1]]\n}");
    let out = run(&["betti", "--spec", &spec], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("spec.json"), "stderr: {err}");
}

#[test]
fn certify_exit_codes_follow_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let anosov = write(
        dir.path(),
        "anosov.json",
        r#"{"genus": 1, "matrix": [[2, 1], [1, 1]]}"#,
    );
    let out = run(&["certify", "--spec", &anosov, "--json"], dir.path());
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["result"]["verdict"], "certified-pA");

    let twist = write(
        dir.path(),
        "twist.json",
        r#"{"genus": 1, "word": [{"curve": "a1", "power": 1}]}"#,
    );
    let out = run(&["certify", "--spec", &twist, "--json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["result"]["verdict"], "certified-not-pA");

    let block = write(
        dir.path(),
        "block.json",
        r#"{"genus": 2, "matrix": [[2,1,0,0],[1,1,0,0],[0,0,2,1],[0,0,1,1]]}"#,
    );
    let out = run(&["certify", "--spec", &block, "--json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let report = stdout_json(&out);
    assert_eq!(report["result"]["verdict"], "inconclusive");
    assert_eq!(report["result"]["checks"][0]["name"], "irreducible");
    assert_eq!(report["result"]["checks"][0]["passed"], false);
}

#[test]
fn extend_writes_document_and_verify_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "spec.json",
        r#"{"genus": 1, "word": [{"curve": "a1", "power": 1}, {"curve": "b1", "power": -1}]}"#,
    );
    let out = run(
        &[
            "extend", "--spec", &spec, "--genus", "3", "--mults", "2,-1", "--out", "ext.json",
            "--json",
        ],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report = stdout_json(&out);
    assert_eq!(report["result"]["variant"], "equal-betti-general");
    assert_eq!(report["result"]["certificate"]["betti_equal"], true);

    // The word survives into the document: f_s letters embed the original
    // spec word plus the handle twists.
    let doc_text = fs::read_to_string(dir.path().join("ext.json")).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&doc_text).unwrap();
    assert!(doc["f_s"]["word"].is_array());

    let out = run(&["verify", "--extension", "ext.json", "--json"], dir.path());
    assert!(out.status.success());
    let report = stdout_json(&out);
    assert_eq!(report["result"]["matches_stored"], true);
    assert_eq!(report["result"]["claims_hold"], true);
}

#[test]
fn verify_flags_tampered_documents() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "spec.json",
        r#"{"genus": 1, "matrix": [[2, 1], [1, 1]]}"#,
    );
    let out = run(
        &["extend", "--spec", &spec, "--genus", "2", "--out", "ext.json"],
        dir.path(),
    );
    assert!(out.status.success());

    let path = dir.path().join("ext.json");
    let mut doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    doc["f_s"]["matrix"][0][2] = serde_json::json!(5);
    fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();

    let out = run(&["verify", "--extension", "ext.json", "--json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let report = stdout_json(&out);
    assert_eq!(report["result"]["matches_stored"], false);
    assert_eq!(report["result"]["certificate"]["block_form_ok"], false);
}

#[test]
fn extend_naive_passes_structural_claims_only() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "spec.json",
        r#"{"genus": 1, "matrix": [[2, 1], [1, 1]]}"#,
    );
    let out = run(
        &[
            "extend", "--spec", &spec, "--genus", "2", "--variant", "naive", "--out", "naive.json",
            "--json",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let report = stdout_json(&out);
    assert_eq!(report["result"]["certificate"]["betti_equal"], false);
    assert_eq!(report["result"]["certificate"]["block_form_ok"], true);
}

#[test]
fn extend_rejects_genus_violation() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "spec.json",
        r#"{"genus": 2, "word": []}"#,
    );
    let out = run(
        &["extend", "--spec", &spec, "--genus", "2", "--out", "x.json"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn snf_reports_diagonal_and_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = write(dir.path(), "m.json", "[[2, 4], [6, 8]]");
    let out = run(&["snf", "--matrix", &matrix, "--json"], dir.path());
    assert!(out.status.success());
    let report = stdout_json(&out);
    assert_eq!(report["result"]["diagonal"], serde_json::json!([2, 4]));
    assert_eq!(report["result"]["rank"], 2);
    assert!(report["result"]["left"].is_array());
    assert!(report["result"]["right"].is_array());
}

#[test]
fn quiet_suppresses_human_output() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "spec.json",
        r#"{"genus": 1, "matrix": [[2, 1], [1, 1]]}"#,
    );
    let out = run(&["betti", "--spec", &spec, "--quiet"], dir.path());
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
}

#[test]
fn reports_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "spec.json",
        r#"{"genus": 2, "word": [{"curve": "a1", "power": 2}]}"#,
    );
    let a = run(&["betti", "--spec", &spec, "--json"], dir.path());
    let b = run(&["betti", "--spec", &spec, "--json"], dir.path());
    assert_eq!(a.stdout, b.stdout);
}
