//! End-to-end tests of the `configcomplex` binary: exit codes, file
//! round-trips, and report formats.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_configcomplex"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

#[test]
fn construction_check_pipeline_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();

    let out = run(&["construct", "singer", "--q", "3", "-o", "s3.ds"], d);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("wrote: s3.ds"));

    let out = run(&["construct", "from-diffset", "s3.ds", "-o", "s3.cfg"], d);
    assert!(out.status.success(), "{}", stderr(&out));

    let out = run(&["complex", "check", "s3.cfg"], d);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("result: pass"));
    assert!(text.contains("lattice cross-check"));
    assert!(text.contains("group-action: ok [pass]"));
}

#[test]
fn converters_pipe_objects_through_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();

    let out = run(&["construct", "singer", "--q", "2"], d);
    assert!(out.status.success());
    let ds_text = stdout(&out);
    assert!(ds_text.starts_with("diffset\n"), "got: {ds_text}");
    std::fs::write(d.join("fano.ds"), &ds_text).unwrap();

    let out = run(&["construct", "from-diffset", "fano.ds"], d);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("configuration\n"));
    std::fs::write(d.join("fano.cfg"), stdout(&out)).unwrap();

    let out = run(&["correspond", "config-to-code", "fano.cfg"], d);
    assert!(out.status.success());
    let code_text = stdout(&out);
    assert_eq!(code_text, "code\nk 2\n1 2 -3\n0 7 -7\n");
    std::fs::write(d.join("fano.code"), &code_text).unwrap();

    let out = run(&["correspond", "code-to-config", "fano.code", "-o", "back.cfg"], d);
    assert!(out.status.success());
    let out = run(&["complex", "check", "back.cfg"], d);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    let out = run(&["correspond", "roundtrip", "fano.cfg"], d);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("configuration is recovered"));
}

#[test]
fn homology_accepts_complexes_and_configurations() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    run(&["construct", "singer", "--q", "2", "-o", "f.ds"], d);
    run(&["construct", "from-diffset", "f.ds", "-o", "f.cfg"], d);

    let from_config = run(&["complex", "homology", "f.cfg"], d);
    assert!(from_config.status.success());
    let text = stdout(&from_config);
    assert!(text.contains("H_0: Z\n"), "got: {text}");
    assert!(text.contains("H_1: Z^2\n"));
    assert!(text.contains("H_2: Z\n"));
    assert!(text.contains("euler characteristic: 0"));

    let out = run(&["complex", "build", "f.cfg", "-o", "f.cx"], d);
    assert!(out.status.success());
    let from_complex = run(&["complex", "homology", "f.cx"], d);
    assert_eq!(stdout(&from_complex), text);
}

#[test]
fn validation_failures_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(
        d.join("bad.ds"),
        "diffset\ngroup 7\nelements 3\n1\n2\n5\n",
    )
    .unwrap();
    let out = run(&["validate", "diffset", "bad.ds"], d);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("[FAIL]"));
    assert!(text.contains("result: fail"));
}

#[test]
fn parse_and_usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();

    std::fs::write(d.join("garbled.ds"), "diffset\ngroup 7\nelements x\n").unwrap();
    let out = run(&["validate", "diffset", "garbled.ds"], d);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"));

    let out = run(&["validate", "diffset", "missing.ds"], d);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["construct", "singer", "--q", "6"], d);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("prime power"));

    let out = run(&["no-such-command"], d);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["--help"], d);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn json_reports_parse_and_carry_outcomes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    run(&["construct", "singer", "--q", "2", "-o", "f.ds"], d);
    run(&["construct", "from-diffset", "f.ds", "-o", "f.cfg"], d);

    let out = run(&["--format", "json", "complex", "check", "f.cfg"], d);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["passed"], serde_json::json!(true));
    assert!(value["rows"].as_array().unwrap().len() > 5);

    std::fs::write(d.join("bad.ds"), "diffset\ngroup 7\nelements 2\n1\n2\n").unwrap();
    let out = run(&["--format", "json", "validate", "diffset", "bad.ds"], d);
    assert_eq!(out.status.code(), Some(1));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["passed"], serde_json::json!(false));
}

#[test]
fn searches_report_counts() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();

    let out = run(&["search", "diffsets", "--n", "13", "--size", "4"], d);
    assert!(out.status.success());
    assert!(stdout(&out).contains("found: 4"));

    let out = run(&["search", "sidon", "--group", "3x3", "--size", "3"], d);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("found: 8"));
    assert!(text.contains("(0,0)"), "product elements are parenthesized: {text}");

    let out = run(&["search", "sidon", "--group", "0x3", "--size", "3"], d);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn semifield_table_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();

    let out = run(&["construct", "field-table", "--q", "4", "-o", "gf4.sf"], d);
    assert!(out.status.success());
    let out = run(&["validate", "semifield", "gf4.sf"], d);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["construct", "semifield", "--table", "gf4.sf", "-o", "gf4.cfg"], d);
    assert!(out.status.success());
    let direct = run(&["construct", "semifield", "--field", "4"], d);
    assert!(direct.status.success());
    assert_eq!(
        std::fs::read_to_string(d.join("gf4.cfg")).unwrap(),
        stdout(&direct)
    );

    // A corrupted table is rejected with named violations.
    let mut table = std::fs::read_to_string(d.join("gf4.sf")).unwrap();
    table = table.replace("mul\n0 0 0 0", "mul\n0 1 0 0");
    std::fs::write(d.join("broken.sf"), table).unwrap();
    let out = run(&["validate", "semifield", "broken.sf"], d);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("zero-annihilation"));
}
