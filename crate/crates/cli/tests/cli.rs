//! End-to-end tests of the `tfd` binary: output formats, fixture
//! verification, and exit codes (0 success, 1 mismatch, 2 usage/parse).

use std::path::PathBuf;
use std::process::{Command, Output};

fn tfd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tfd"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn classify_json_has_21_records() {
    let out = tfd(&["classify", "--format", "json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["schema_version"], "1.0");
    assert_eq!(value["records"].as_array().unwrap().len(), 21);
}

#[test]
fn classify_markdown_is_deterministic() {
    let a = stdout(&tfd(&["classify", "--format", "markdown"]));
    let b = stdout(&tfd(&["classify", "--format", "markdown"]));
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 23);
}

#[test]
fn classify_case_filter() {
    let out = stdout(&tfd(&["classify", "--format", "tsv", "--case", "iii"]));
    // Header plus the three case III rows.
    assert_eq!(out.lines().count(), 4);
    assert!(out.contains("III.3"));
}

#[test]
fn classify_rejects_unknown_format() {
    let out = tfd(&["classify", "--format", "yaml"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn list_exceptional_counts() {
    let out = tfd(&["list-exceptional", "--k", "2"]);
    assert!(out.status.success());
    let lines: Vec<String> = stdout(&out).lines().map(str::to_owned).collect();
    assert_eq!(lines, vec!["E1", "E2", "u-E1-E2"]);

    let out = tfd(&["list-exceptional", "--k", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_all_fixtures() {
    let dir = fixtures_dir();
    let out = tfd(&["verify-example", "--fixtures", dir.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(stdout(&out).lines().count(), 21);
}

#[test]
fn verify_single_fixture() {
    let path = fixtures_dir().join("I-1.fixture");
    let out = tfd(&["verify-example", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("matched I-1"));
}

#[test]
fn verify_wrong_expectation_exits_1() {
    let dir = std::env::temp_dir().join("tfd-test-wrong-expect");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("wrong.fixture");
    std::fs::write(
        &path,
        "dim 3\n0 0 0\n4 0 0\n0 4 0\n0 0 4\nxi: 1 1 0\nexpect: II-1.2\n",
    )
    .unwrap();
    let out = tfd(&["verify-example", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_malformed_fixture_exits_2() {
    let dir = std::env::temp_dir().join("tfd-test-malformed");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.fixture");
    std::fs::write(&path, "dim 3\n0 0\nxi: 1 1 0\n").unwrap();
    let out = tfd(&["verify-example", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_all_passes() {
    let out = tfd(&["check", "all"]);
    assert!(out.status.success(), "stdout: {}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("13 profile solutions / 8 normalized"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn check_single_suite() {
    let out = tfd(&["check", "splitting"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("oracle agreement"));
}
