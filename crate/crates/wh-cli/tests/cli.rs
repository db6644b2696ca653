//! End-to-end checks of the `whframes` binary: exit codes, JSON payloads,
//! and determinism across repeated runs.

use serde_json::Value;
use std::process::{Command, Output};

fn whframes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_whframes"))
        .args(args)
        .output()
        .expect("failed to launch whframes")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is not valid JSON")
}

const EX_WINDOW: &str = "[[0,2,1],[2,3,-1]]";

#[test]
fn cc_reports_exact_bounds() {
    let out = whframes(&["cc", "--g", EX_WINDOW]);
    let v = stdout_json(&out);
    assert_eq!(v["frame_lower"], "1");
    assert_eq!(v["frame_upper"], "5");
    assert_eq!(v["status"], "Frame");
}

#[test]
fn frameset_rejects_pair_and_accepts_triple() {
    let out = whframes(&["frameset", "--exps", "0,1,2"]);
    let v = stdout_json(&out);
    assert_eq!(v["status"], "NotFrame");
    assert!(v["witness"].is_string());

    let out = whframes(&["frameset", "--exps", "0,1,3"]);
    let v = stdout_json(&out);
    assert_eq!(v["status"], "Frame");
    let min = v["range"]["min_modulus"][0].as_f64().unwrap();
    let max = v["range"]["max_modulus"][1].as_f64().unwrap();
    assert!(min > 0.6 && min < 0.61, "min modulus {min}");
    assert!((max - 3.0).abs() < 1e-6, "max modulus {max}");
}

#[test]
fn abc_integer_c_rule() {
    let out = whframes(&["abc", "--a", "9/10", "--c", "3"]);
    let v = stdout_json(&out);
    assert_eq!(v["status"], "NotFrame");
    assert_eq!(v["rule"], "INTEGER_C");
}

#[test]
fn malformed_input_exits_2() {
    let out = whframes(&["cc", "--g", "[[0,2,"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());

    // Float literals are rejected without --approx.
    let out = whframes(&["cc", "--g", "[[0,2,0.5]]"]);
    assert_eq!(out.status.code(), Some(2));
    let out = whframes(&["--approx", "cc", "--g", "[[0,2,0.5]]"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn strict_flags_inconclusive_points() {
    // a = 1/3, c = 5/3 sits on the boundary of the Janssen band: no rule
    // fires, so the verdict is Inconclusive.
    let args = ["abc", "--a", "1/3", "--c", "5/3"];
    let out = whframes(&args);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["status"], "Inconclusive");

    let strict: Vec<&str> = std::iter::once("--strict").chain(args).collect();
    let out = whframes(&strict);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        vec!["frameset", "--exps", "0,1,3"],
        vec!["chart", "--denom", "10", "--format", "csv"],
        vec!["witness", "--family", "case2", "--ns", "2,4,8", "--format", "csv"],
        vec!["fundamental-check", "--a", "3/4", "--trials", "5"],
    ] {
        let first = whframes(&args);
        let second = whframes(&args);
        assert!(first.status.success());
        assert_eq!(first.stdout, second.stdout, "nondeterministic: {args:?}");
    }
}
