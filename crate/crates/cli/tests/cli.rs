use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures")
}

fn fixture(name: &str) -> String {
    fixtures().join(name).display().to_string()
}

fn netccs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_netccs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn classify_sync_net() {
    let out = netccs(&["classify", &fixture("sync_net.pn")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("ccs_net: true\n"));
    assert!(text.contains("free_choice: false\n"));
}

#[test]
fn classify_overlap_json() {
    let out = netccs(&["--format", "json", "classify", &fixture("overlap.pn")]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["classification"]["is_group_choice"], false);
    assert!(r.get("verdicts").is_none());
}

#[test]
fn classify_empty_net() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.pn");
    std::fs::write(&path, "").unwrap();
    let r = json(&netccs(&[
        "--format",
        "json",
        "classify",
        path.to_str().unwrap(),
    ]));
    let c = &r["classification"];
    assert_eq!(c["is_workflow"], false);
    for flag in [
        "is_free_choice",
        "is_ccs_net",
        "is_2tau_sync",
        "is_group_choice",
    ] {
        assert_eq!(c[flag], true, "{flag}");
    }
}

#[test]
fn pnml_and_text_twins_classify_alike() {
    let a = json(&netccs(&[
        "--format",
        "json",
        "classify",
        &fixture("fcwf.pn"),
    ]));
    let b = json(&netccs(&[
        "--format",
        "json",
        "classify",
        &fixture("fcwf.pnml"),
    ]));
    assert_eq!(a["classification"], b["classification"]);
    assert_eq!(a["classification"]["is_free_choice_workflow"], true);
}

#[test]
fn encode_sync_net_matches_golden_text() {
    let out = netccs(&["encode", &fixture("sync_net.pn")]);
    assert_eq!(out.status.code(), Some(0));
    let golden = std::fs::read_to_string(fixtures().join("sync_net.ccs")).unwrap();
    assert_eq!(stdout(&out), golden);
}

#[test]
fn encode_generator() {
    let out = netccs(&["encode", &fixture("generator.pn")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("X_t1 = b.(X_t1 | X_p1)\n"));
}

#[test]
fn encode_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.ccs");
    let out = netccs(&[
        "--format",
        "json",
        "encode",
        &fixture("fcwf.pn"),
        "--class",
        "fcwf",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["encoding"]["class"], "fcwf");
    assert_eq!(r["transform"]["steps"], 2);
    assert!(r.get("ccs").is_none());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("new "));
}

#[test]
fn encode_rejects_class_mismatch() {
    let out = netccs(&["encode", &fixture("overlap.pn")]);
    assert_eq!(out.status.code(), Some(2));
    let out = netccs(&["encode", &fixture("sync_net.pn"), "--class", "fcwf"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("fcwf"), "{err}");
}

#[test]
fn seeded_encoding_is_reproducible() {
    let run = || stdout(&netccs(&["encode", &fixture("fcwf.pn"), "--seed", "7"]));
    assert_eq!(run(), run());
}

#[test]
fn lts_sync_net() {
    let out = netccs(&["lts", &fixture("sync_net.pn")]);
    assert_eq!(out.status.code(), Some(0));
    let golden = std::fs::read_to_string(fixtures().join("sync_net.aut")).unwrap();
    assert_eq!(stdout(&out), golden);
}

#[test]
fn lts_of_ccs_program() {
    let out = netccs(&["lts", "--ccs", &fixture("sync_net.ccs")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("des (0, 7, 7)\n"));
}

#[test]
fn lts_with_no_tokens() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("idle.pn");
    std::fs::write(&path, "place p\ntransition t label a\narc p t\n").unwrap();
    let out = netccs(&["lts", path.to_str().unwrap()]);
    assert_eq!(stdout(&out), "des (0, 0, 1)\n");
}

#[test]
fn lts_cap_exceeded() {
    let out = netccs(&["lts", &fixture("generator.pn"), "--max-states", "10"]);
    assert_eq!(out.status.code(), Some(3));
    let out = netccs(&[
        "--format",
        "json",
        "lts",
        &fixture("generator.pn"),
        "--max-states",
        "10",
    ]);
    let r = json(&out);
    assert_eq!(r["error"]["kind"], "resource_limit");
    assert_eq!(r["exit_code"], 3);
}

#[test]
fn check_sync_net_strong() {
    let out = netccs(&["check", &fixture("sync_net.pn"), "--relation", "strong"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn check_workflow_weak_with_divergence() {
    let out = netccs(&[
        "--format",
        "json",
        "check",
        &fixture("fcwf.pn"),
        "--relation",
        "weak",
        "--divergence",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = &json(&out)["verdicts"];
    assert_eq!(v["weak"], true);
    assert_eq!(v["divergence_before"], v["divergence_after"]);
}

#[test]
fn strong_failure_is_not_a_pipeline_failure() {
    // the rewritten pipeline is only weakly bisimilar; the default relation is weak
    let out = netccs(&["--format", "json", "check", &fixture("shared_pair.pn")]);
    assert_eq!(out.status.code(), Some(0));
    let v = &json(&out)["verdicts"];
    assert_eq!(
        (v["strong"].as_bool(), v["weak"].as_bool()),
        (Some(false), Some(true))
    );
}

#[test]
fn check_mutated_encoding_fails_with_distinguisher() {
    let out = netccs(&[
        "--format",
        "json",
        "check",
        &fixture("sync_net.pn"),
        "--ccs",
        &fixture("sync_net_mutated.ccs"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r["verdicts"]["strong"], false);
    assert!(!r["distinguisher"]["challenges"]
        .as_array()
        .unwrap()
        .is_empty());
    assert_eq!(r["inputs"].as_array().unwrap().len(), 2);
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.pn");
    std::fs::write(&bad, "place p\narc p t\n").unwrap();
    let out = netccs(&["classify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 2"));
    assert_eq!(
        netccs(&["classify", "/nonexistent/x.pn"]).status.code(),
        Some(2)
    );
    assert_eq!(
        netccs(&["check", &fixture("sync_net.pn"), "--class", "bogus"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        netccs(&["lts", &fixture("sync_net.pn"), "--max-states", "0"])
            .status
            .code(),
        Some(2)
    );
}

/// Replaces timings, which vary between runs.
fn normalise(mut v: Value) -> Value {
    for t in v["timings"].as_array_mut().unwrap() {
        t["ms"] = Value::from(0.0);
    }
    v
}

#[test]
fn check_report_matches_golden() {
    let out = Command::new(env!("CARGO_BIN_EXE_netccs"))
        .current_dir(fixtures())
        .args(["--format", "json", "check", "sync_net.pn", "--divergence"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let actual = normalise(serde_json::from_slice(&out.stdout).unwrap());
    let golden_path =
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/check_sync_net.json");
    let golden: Value =
        serde_json::from_str(&std::fs::read_to_string(golden_path).unwrap()).unwrap();
    assert_eq!(actual, golden);
}
