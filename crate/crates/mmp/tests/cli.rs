//! End-to-end tests of the `mmp` binary.

use std::process::{Command, Output};

fn mmp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mmp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn dist_text_csv_json() {
    let out = mmp(&["dist", "--n", "4", "--k", "2", "--primed"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "6 + 11x + 6x^2 + x^3");

    let out = mmp(&["dist", "--n", "4", "--k", "2", "--primed", "--format", "csv"]);
    assert_eq!(
        stdout(&out).trim(),
        "degree,coefficient\n0,6\n1,11\n2,6\n3,1"
    );

    let out = mmp(&["dist", "--n", "4", "--k", "2", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(value["coefficients"][0], "17");
    assert_eq!(value["coefficients"][2], "1");
}

#[test]
fn stirling_and_harmonic() {
    let out = mmp(&["stirling", "--which", "r", "--n", "7", "--m", "5", "--r", "3"]);
    assert_eq!(stdout(&out).trim(), "119");
    let out = mmp(&["stirling", "--which", "c", "--n", "5", "--m", "2"]);
    assert_eq!(stdout(&out).trim(), "50");
    let out = mmp(&["stirling", "--which", "s", "--n", "5", "--m", "2"]);
    assert_eq!(stdout(&out).trim(), "-50");
    let out = mmp(&["harmonic", "--n", "3", "--j", "1"]);
    assert_eq!(stdout(&out).trim(), "11/6");
    let out = mmp(&["harmonic", "--n", "4", "--j", "2", "--level", "3"]);
    assert_eq!(stdout(&out).trim(), "119/24");
}

#[test]
fn match_report() {
    let out = mmp(&["match", "--perm", "13548762", "--k", "4", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(value["mmp"], "1");
    assert_eq!(value["mmp_primed"], "2");
    assert_eq!(value["zero_matches"], true);
}

#[test]
fn biject_fiber_example() {
    let out = mmp(&[
        "biject", "--which", "rstir-fwd", "--perm", "1,3,6,2,5,7,4,8", "--k", "4",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("13548762"), "{text}");
    assert!(text.contains("case2"), "{text}");

    let out = mmp(&["biject", "--which", "rstir-inv", "--perm", "13548762", "--k", "4"]);
    assert_eq!(stdout(&out).trim(), "13625748");
}

#[test]
fn table_latex() {
    let out = mmp(&["table", "--n", "3", "--format", "latex"]);
    let text = stdout(&out);
    assert!(text.contains("\\begin{array}"), "{text}");
    assert!(text.contains("\\downarrow"), "{text}");
}

#[test]
fn verify_small_pass() {
    let out = mmp(&[
        "verify", "--max-n", "4", "--suites", "distributions,k2,lemmas",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("PASS"), "{}", stdout(&out));

    let out = mmp(&[
        "verify", "--max-n", "4", "--suites", "distributions", "--format", "json",
    ]);
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(value["pass"], true);
    assert_eq!(value["failures"], "0");
}

#[test]
fn deterministic_output() {
    let a = mmp(&["verify", "--max-n", "4", "--suites", "distributions"]);
    let b = mmp(&["verify", "--max-n", "4", "--suites", "distributions"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn error_exit_codes() {
    // domain error: k < 2
    let out = mmp(&["dist", "--n", "4", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    // parse error: bad permutation
    let out = mmp(&["match", "--perm", "1,5,2", "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));
    // usage error: unknown subcommand (clap exits 2)
    let out = mmp(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    // missing required flag for main2-fwd
    let out = mmp(&["biject", "--which", "main2-fwd", "--perm", "2341", "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));
}
