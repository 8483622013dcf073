//! End-to-end tests of the command-line binary: exit-code contract, output
//! formats, and byte-identical repeated runs.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gvchar"))
}

fn catalog() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../catalog/default.json")
}

#[test]
fn selftest_suite_succeeds() {
    let out = bin()
        .args(["verify", "--catalog"])
        .arg(catalog())
        .args(["--suite", "table-selftest"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"table.selftest\""));
    assert!(text.contains("\"failures\": 0"));
}

#[test]
fn missing_catalog_is_usage_error() {
    let out = bin()
        .args(["verify", "--catalog", "/nonexistent/nowhere.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_suite_is_usage_error() {
    let out = bin()
        .args(["verify", "--catalog"])
        .arg(catalog())
        .args(["--suite", "everything"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_format_is_usage_error() {
    let out = bin()
        .args(["verify", "--catalog"])
        .arg(catalog())
        .args(["--format", "xml"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_catalog_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"instances":[{"label":"x","p":4,"n":1,"generators":[[[1]]]}]}"#)
        .unwrap();
    let out = bin().args(["verify", "--catalog"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn capped_instances_error_and_exit_one() {
    // a max-order below every instance size turns each build into a recorded
    // error, and recorded errors mean exit code 1
    let out = bin()
        .args(["verify", "--catalog"])
        .arg(catalog())
        .args(["--suite", "table-selftest", "--max-order", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = bin()
            .args(["verify", "--catalog"])
            .arg(catalog())
            .args(["--suite", "identities", "--out"])
            .arg(path)
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn csv_output_has_one_row_per_check() {
    let out = bin()
        .args(["verify", "--catalog"])
        .arg(catalog())
        .args(["--suite", "table-selftest", "--format", "csv"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "label,kind,id,applicable,lhs,relation,rhs,ok,context"
    );
    // one selftest row per catalog instance
    assert_eq!(lines.filter(|l| l.contains(",table.selftest,")).count(), 14);
}
