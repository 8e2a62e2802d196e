//! The `rostlab` binary: exit codes, JSON shape, session files and determinism.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn rostlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rostlab"))
        .args(args)
        .env_remove("ROSTLAB_JOBS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const F32: [&str; 6] = ["--q", "3", "--ell", "2", "--depth", "2"];

fn with_field<'a>(head: &[&'a str]) -> Vec<&'a str> {
    let mut v = head.to_vec();
    v.extend(F32);
    v
}

#[test]
fn field_command() {
    let out = rostlab(&["field", "--q", "3", "--ell", "2", "--n", "1", "--depth", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["handle"], "F1");
    assert_eq!(v["basis"]["zeta"], 2);
    assert_eq!(v["basis"]["variables"], serde_json::json!(["x1", "x2"]));

    let out = rostlab(&["field", "--q", "7", "--ell", "3", "--n", "1", "--depth", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["handle"], "F1");
}

#[test]
fn invalid_fields_and_usage_exit_2() {
    let out = rostlab(&["field", "--q", "5", "--ell", "3", "--depth", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"], "RootsOfUnityMissing");
    assert!(String::from_utf8_lossy(&out.stderr).contains("RootsOfUnityMissing"));

    assert_eq!(rostlab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(rostlab(&["field", "--q", "three"]).status.code(), Some(2));
    assert_eq!(rostlab(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(rostlab(&with_field(&["eval", "symbol {x1"])).status.code(), Some(2));
    assert_eq!(rostlab(&with_field(&["rost", "class x1"])).status.code(), Some(2));
}

#[test]
fn eval_expressions() {
    let out = rostlab(&with_field(&["eval", "class 1"]));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["exps"], serde_json::json!([0, 0, 0]));

    // ∂{x2, u} = -(u) on the residue field
    let v = json(&rostlab(&with_field(&["eval", "residue (symbol {x2, u} F1)"])));
    assert_eq!(v["result"]["degree"], 1);
    assert_eq!(v["result"]["coeffs"], serde_json::json!({ "{}": 1 }));

    let v = json(&rostlab(&with_field(&["eval", "cup (symbol {x1,x2}) (class x1)"])));
    assert_eq!(v["result"]["degree"], 3);
    assert_eq!(v["result"]["coeffs"], serde_json::json!({ "{1,2}": 1 }));

    let v = json(&rostlab(&with_field(&["eval", "decompose (symbol {x1, x2})"])));
    assert_eq!(v["result"]["ramified_character"], serde_json::json!([0, 1]));
}

#[test]
fn rost_suslin_report() {
    let v = json(&rostlab(&with_field(&["rost", "symbol {x1, x2}"])));
    assert_eq!(v["order"], 4);
    let out = rostlab(&with_field(&["suslin", "symbol {x1, x2}"]));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["s_exact"], true);
    let out = rostlab(&with_field(&["report", "symbol {u, x1}"]));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "Verified");
    assert_eq!(v["quotient_order"], 1);
}

#[test]
fn ext_and_albert() {
    let out = rostlab(&with_field(&["ext", "--kummer", "x2", "--splits", "symbol {u, x2}"]));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["splits"], true);
    let out = rostlab(&with_field(&[
        "ext",
        "--unramified",
        "2",
        "--splits",
        "symbol {x1, x2}",
    ]));
    assert_eq!(json(&out)["splits"], false);

    let out = rostlab(&with_field(&["albert", "u", "x1", "x1", "x2"]));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["holds"], true);
    assert_eq!(v["R"], v["G"]);
}

#[test]
fn verify_exit_codes() {
    let out = rostlab(&["verify", "rost-div-l", "--q", "3", "--ell", "2", "--depth", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "Verified");
    assert_eq!(v["cells"], 64);

    let out = rostlab(&["verify", "steinberg", "--samples", "300"]);
    assert_eq!(out.status.code(), Some(0));

    let out = rostlab(&[
        "verify", "thm-1-6", "--q", "5", "--ell", "2", "--n", "2", "--depth", "2",
    ]);
    assert!(matches!(out.status.code(), Some(0 | 3)));
}

#[test]
fn session_file_and_determinism() {
    let mut cfg = tempfile::NamedTempFile::new().unwrap();
    writeln!(cfg, "# two fields and an extension").unwrap();
    writeln!(cfg, "field A q=3 ell=2 n=1 depth=2").unwrap();
    writeln!(cfg, "field B q=7 ell=3 n=1 depth=2 precision=3").unwrap();
    writeln!(cfg, "ext E A kummer=x2 m=1").unwrap();
    let path = cfg.path().to_str().unwrap();

    let out = rostlab(&["--config", path, "eval", "symbol {x1, x2} B"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["coeffs"], serde_json::json!({ "{1,2}": 1 }));

    let out = rostlab(&["--config", path, "ext", "--handle", "E", "--splits", "symbol {x1, x2}"]);
    assert_eq!(json(&out)["splits"], true);

    let args = [
        "--config",
        path,
        "verify",
        "residue-formulas",
        "--field",
        "A",
        "--samples",
        "200",
        "--seed",
        "5",
    ];
    let first = rostlab(&args);
    let second = Command::new(env!("CARGO_BIN_EXE_rostlab"))
        .args(args)
        .env("ROSTLAB_JOBS", "1")
        .output()
        .unwrap();
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "field A q=3 ell=2 depth=1\nfield A q=5 ell=2 depth=1").unwrap();
    let out = rostlab(&["--config", bad.path().to_str().unwrap(), "field"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn jobs_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_rostlab"))
        .args(["verify", "steinberg", "--samples", "50"])
        .env("ROSTLAB_JOBS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_rostlab"))
        .args(["verify", "steinberg", "--samples", "50"])
        .env("ROSTLAB_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
