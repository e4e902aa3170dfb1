//! End-to-end tests of the command-line binary: exit codes and
//! byte-stable JSON output.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_lpa")
}

fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const G1: &str = r#"{"vertices":["v"],"edges":[{"id":"e","src":"v","dst":"v","mult":1}]}"#;
const G5: &str = r#"{"vertices":["u","v","w","x"],"edges":[]}"#;

#[test]
fn analyze_and_classify_succeed() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g1.json", G1);
    let out = run(&["analyze", g.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("condition (K): false"));
    assert!(text.contains("every ideal a product of primes: true"));

    let i = write(
        dir.path(),
        "i.json",
        r#"{"H":[],"cycles":[{"cycle":["e#0"],"poly":"(x-1)^2"}],"field":"Q"}"#,
    );
    let out = run(&["ideal", g.to_str().unwrap(), i.to_str().unwrap(), "classify"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("prime: false"));
    assert!(text.contains("semiprime: false"));
    assert!(text.contains("prime-power: true"));
    assert!(text.contains("n = 2"));
}

#[test]
fn factor_prime_emits_verified_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g1.json", G1);
    let i = write(
        dir.path(),
        "i.json",
        r#"{"H":[],"cycles":[{"cycle":["e#0"],"poly":"(x-1)^2"}],"field":"Q"}"#,
    );
    let out = run(&["ideal", g.to_str().unwrap(), i.to_str().unwrap(), "factor-prime"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verified"], true);
    assert_eq!(v["factors"].as_array().unwrap().len(), 2);
}

#[test]
fn binop_normal_form_and_idempotent_reserialization() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g5.json", G5);
    let iu = write(dir.path(), "iu.json", r#"{"H":["u"],"field":"Q"}"#);
    let iv = write(dir.path(), "iv.json", r#"{"H":["v"],"field":"Q"}"#);
    let out = run(&[
        "binop",
        g.to_str().unwrap(),
        iu.to_str().unwrap(),
        iv.to_str().unwrap(),
        "product",
    ]);
    assert!(out.status.success());
    let first = stdout(&out);
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["H"].as_array().unwrap().len(), 0); // the zero ideal

    // feeding canonical output back in reproduces it byte for byte
    let back = write(dir.path(), "back.json", &first);
    let out = run(&[
        "binop",
        g.to_str().unwrap(),
        back.to_str().unwrap(),
        back.to_str().unwrap(),
        "sum",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), first);

    let out = run(&[
        "binop",
        g.to_str().unwrap(),
        iu.to_str().unwrap(),
        iu.to_str().unwrap(),
        "contains",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "true");
}

#[test]
fn graph_reserialization_is_idempotent_via_dot_and_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g1.json", G1);
    let out = run(&["export-dot", g.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("digraph"));

    let out = run(&["oracle", g.to_str().unwrap(), "--trials", "50", "--seed", "7"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["mismatches"].as_array().unwrap().len(), 0);
}

#[test]
fn input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    // missing file
    let out = run(&["analyze", dir.path().join("nope.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    // malformed JSON
    let bad = write(dir.path(), "bad.json", "{ not json");
    let out = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    // unknown vertex in an ideal
    let g = write(dir.path(), "g1.json", G1);
    let i = write(dir.path(), "i.json", r#"{"H":["zz"],"field":"Q"}"#);
    let out = run(&["ideal", g.to_str().unwrap(), i.to_str().unwrap(), "classify"]);
    assert_eq!(out.status.code(), Some(1));
    // field flag conflicting with the document
    let i2 = write(dir.path(), "i2.json", r#"{"H":[],"field":"Fp:5"}"#);
    let out = run(&[
        "ideal",
        g.to_str().unwrap(),
        i2.to_str().unwrap(),
        "classify",
        "--field",
        "Q",
    ]);
    assert_eq!(out.status.code(), Some(1));
    // oracle on an ineligible graph (cycle with exits)
    let g4 = write(
        dir.path(),
        "g4.json",
        r#"{"vertices":["a","b"],"edges":[
            {"id":"ea","src":"a","dst":"a","mult":1},
            {"id":"ab","src":"a","dst":"b","mult":1},
            {"id":"eb","src":"b","dst":"b","mult":1}]}"#,
    );
    let out = run(&["oracle", g4.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn degree_bound_flag_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g1.json", G1);
    let i = write(
        dir.path(),
        "i.json",
        r#"{"H":[],"cycles":[{"cycle":["e#0"],"poly":"(x-1)^2(x-2)"}],"field":"Q"}"#,
    );
    let ok = run(&["ideal", g.to_str().unwrap(), i.to_str().unwrap(), "factor-prime"]);
    assert!(ok.status.success());
    let limited = run(&[
        "ideal",
        g.to_str().unwrap(),
        i.to_str().unwrap(),
        "factor-prime",
        "--qdeg",
        "2",
    ]);
    assert_eq!(limited.status.code(), Some(1));
}
