//! End-to-end checks of the `qgh` binary: exit codes, golden output, and
//! byte-identical reruns for a fixed (config, seed).

use std::path::Path;
use std::process::Command;

fn qgh(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_qgh")).args(args).output().unwrap()
}

#[test]
fn growth_golden_and_deterministic() {
    let args = ["growth", "--algebra", "su2", "--cap", "12", "--nmax", "10"];
    let a = qgh(&args);
    assert!(a.status.success());
    let text = String::from_utf8(a.stdout.clone()).unwrap();
    // σ(n) = (n+1)² for the level length.
    assert!(text.lines().any(|l| l.starts_with("3,16.0,")), "{text}");
    assert!(text.contains("# algebra = su2"));
    let b = qgh(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn converge_rerun_is_byte_identical() {
    let args = [
        "converge", "--algebra", "zdual", "--radius", "40", "--k", "1", "--lambda", "4,8",
        "--samples", "5", "--iterations", "2", "--seed", "11",
    ];
    let a = qgh(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    let b = qgh(&args);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.contains("# seed = 11"));
    assert!(text.contains("lambda,folner_ratio"));
}

#[test]
fn multiplier_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let a = qgh(&[
        "multiplier", "--algebra", "zdual", "--radius", "20", "--lambda", "3",
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert!(a.status.success());
    let text = std::fs::read_to_string(dir.path().join("multiplier.csv")).unwrap();
    // Fejér kernel at Λ = 3: φ(1) = 6/7.
    assert!(text.lines().any(|l| l.contains("8.571428571429e-1")), "{text}");
}

#[test]
fn config_errors_exit_2() {
    // Unknown family.
    assert_eq!(qgh(&["growth", "--algebra", "nope"]).status.code(), Some(2));
    // Λ list not ascending.
    let a = qgh(&["folner", "--algebra", "zdual", "--radius", "20", "--lambda", "8,4"]);
    assert_eq!(a.status.code(), Some(2));
    // Clap-level parse failure.
    assert_eq!(qgh(&["rd", "--algebra", "zdual"]).status.code(), Some(2));
}

#[test]
fn bad_fusion_file_reports_offending_triple() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    // A two-element "group" table where g·g = g: associative, but g has no
    // inverse, so the table is not a group and must be rejected.
    std::fs::write(
        &path,
        r#"{
  "labels": ["e", "g"],
  "unit": "e",
  "conj": ["e", "g"],
  "dim": [1.0, 1.0],
  "fusion": [
    {"a": "e", "b": "e", "c": "e", "n": 1},
    {"a": "e", "b": "g", "c": "g", "n": 1},
    {"a": "g", "b": "e", "c": "g", "n": 1},
    {"a": "g", "b": "g", "c": "g", "n": 1}
  ]
}"#,
    )
    .unwrap();
    let a = qgh(&[
        "algebra", "--algebra", "file", "--file", path.to_str().unwrap(),
        "--generators", "g",
    ]);
    assert_eq!(a.status.code(), Some(2));
    let err = String::from_utf8(a.stderr).unwrap();
    assert!(err.contains("for g"), "stderr should point at the offending label: {err}");
}

#[test]
fn lip_sweep_on_explicit_element() {
    let a = qgh(&[
        "lip", "--algebra", "zdual", "--radius", "30", "--k", "1", "--windows", "4,8",
        "--element", "1:1:0;-1:1:0",
    ]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#') && !l.is_empty()).count(), 3);
}

// Round-trip: a file the library exported is accepted by the binary.
#[test]
fn algebra_file_roundtrip_via_cli() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z.json");
    let file = qgh::fusion::algebra_to_fusion_file(&qgh::fusion::zd_dual(1, 6).unwrap());
    std::fs::write(&path, serde_json::to_string_pretty(&file).unwrap()).unwrap();
    let a = qgh(&[
        "algebra", "--algebra", "file", "--file", path.to_str().unwrap(),
        "--generators", "1;-1",
    ]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert!(Path::new(path.to_str().unwrap()).exists());
}
