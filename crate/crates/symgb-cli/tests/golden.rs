//! Golden-file regression tests: every command's output is byte-compared
//! against a frozen expectation, and the error paths are pinned to their
//! exit codes.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_symgb"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).env_remove("SYMGB_LEVEL_CAP").output().expect("binary runs")
}

fn check_golden(name: &str, args: &[&str]) {
    let out = run(args);
    assert!(
        out.status.success(),
        "{name}: exited with {:?}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    let expected = std::fs::read_to_string(format!(
        "{}/tests/golden/{name}",
        env!("CARGO_MANIFEST_DIR")
    ))
    .unwrap_or_else(|_| panic!("missing golden file {name}"));
    let got = String::from_utf8(out.stdout).expect("utf8 output");
    assert_eq!(got, expected, "{name}: output drifted from the golden file");
}

#[test]
fn gb_text_and_json() {
    check_golden(
        "gb_qq_power_sums.txt",
        &["gb", "--field", "QQ", "--level", "1", "x1+x2", "x1^2+x2^2"],
    );
    check_golden(
        "gb_f101_power_sums.txt",
        &["gb", "--field", "F101", "--level", "1", "x1+x2", "x1^2+x2^2"],
    );
    check_golden(
        "gb_qq_power_sums.json",
        &["--format", "json", "gb", "--field", "QQ", "--level", "1", "x1+x2", "x1^2+x2^2"],
    );
}

#[test]
fn gin_text_and_json() {
    check_golden(
        "gin_qq_quadric.txt",
        &["gin", "--field", "QQ", "--n", "3", "--trials", "5", "--seed", "7", "x2*x3"],
    );
    check_golden(
        "gin_qq_quadric.json",
        &[
            "--format", "json", "gin", "--field", "QQ", "--n", "3", "--trials", "5",
            "--seed", "7", "x2*x3",
        ],
    );
    check_golden(
        "gin_f101_lines.txt",
        &["gin", "--field", "F101", "--n", "2", "--trials", "5", "--seed", "11", "x1", "x2"],
    );
}

#[test]
fn stillman_text_and_json() {
    check_golden("stillman_1_2.txt", &["stillman", "--k", "1", "--degrees", "2", "--cap", "6"]);
    check_golden("stillman_2_11.txt", &["stillman", "--k", "2", "--degrees", "1,1"]);
    check_golden(
        "stillman_1_1.json",
        &["--format", "json", "stillman", "--k", "1", "--degrees", "1"],
    );
}

#[test]
fn expand_and_reduce() {
    check_golden(
        "expand_qq.txt",
        &["expand", "--field", "QQ", "--m", "2", "rep(n=1, d=2) x1^2 + x2^2"],
    );
    check_golden(
        "reduce_qq.txt",
        &[
            "reduce", "--field", "QQ", "rep(n=1, d=2) x1^2 + x2^2", "--by",
            "rep(n=1, d=1) x1 + x2",
        ],
    );
    check_golden(
        "reduce_f7.txt",
        &[
            "reduce", "--field", "F7", "rep(n=1, d=2) x1^2 + x2^2", "--by",
            "rep(n=1, d=1) x1 + x2",
        ],
    );
}

#[test]
fn deterministic_across_runs() {
    let a = run(&["gin", "--field", "QQ", "--n", "3", "--trials", "5", "--seed", "7", "x2*x3"]);
    let b = run(&["gin", "--field", "QQ", "--n", "3", "--trials", "5", "--seed", "7", "x2*x3"]);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["stillman", "--k", "2", "--degrees", "1,1"]);
    let b = run(&["stillman", "--k", "2", "--degrees", "1,1"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn printed_output_reparses() {
    // round trip: every printed representation parses back to itself
    let out = run(&["expand", "--field", "QQ", "--m", "3", "rep(n=0, d=2) x1^2 + 2*x1*x2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let again = run(&["expand", "--field", "QQ", "--m", "3", text.trim()]);
    assert_eq!(text, String::from_utf8(again.stdout).unwrap());
}

#[test]
fn exit_codes() {
    // 1: malformed polynomial
    let out = run(&["gb", "--field", "QQ", "--level", "1", "x1 + + x2"]);
    assert_eq!(out.status.code(), Some(1));

    // 2: precondition violation (x3 is not orbit-maximal at level 1)
    let out = run(&["gb", "--field", "QQ", "--level", "1", "x3"]);
    assert_eq!(out.status.code(), Some(2));

    // 2: non-homogeneous generator
    let out = run(&["gb", "--field", "QQ", "--level", "1", "x1^2 + x2"]);
    assert_eq!(out.status.code(), Some(2));

    // 2: composite modulus
    let out = run(&["gb", "--field", "F91", "--level", "1", "x1"]);
    assert_eq!(out.status.code(), Some(2));

    // 3: level cap diagnostic
    let out = run(&["gb", "--field", "QQ", "--level", "0", "--cap", "0", "x1^2"]);
    assert_eq!(out.status.code(), Some(3));

    // the cap default can be overridden by the environment
    let out = bin()
        .args(["gb", "--field", "QQ", "--level", "0", "x1^2"])
        .env("SYMGB_LEVEL_CAP", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    // but an explicit flag beats the environment
    let out = bin()
        .args(["gb", "--field", "QQ", "--level", "0", "--cap", "6", "x1^2"])
        .env("SYMGB_LEVEL_CAP", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
