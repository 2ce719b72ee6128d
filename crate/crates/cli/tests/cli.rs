//! End-to-end tests of the binary: command output, JSON schemas, exit codes.

use std::process::{Command, Output};

fn spinbranch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinbranch"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn enumerate_lists_in_order() {
    let out = spinbranch(&["enumerate", "--p", "3", "--n", "5"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "4,1\n3,2\n");
}

#[test]
fn enumerate_empty_partition_line() {
    let out = spinbranch(&["enumerate", "--p", "5", "--n", "0"]);
    assert_eq!(stdout(&out), "\n");
}

#[test]
fn classify_matches_schema() {
    let out = spinbranch(&["classify", "--p", "5", "--lambda", "3,2,1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["js"], "JS(0)");
    assert_eq!(v["eps"], serde_json::json!([1, 0, 0]));
    assert_eq!(v["labels"], serde_json::json!(["beta"]));
    assert_eq!(v["dim_lower_bound"], "8");
    // Round-trip: the printed partition parses back.
    assert_eq!(v["partition"], "3,2,1");
}

#[test]
fn dims_emits_decimal_strings() {
    let out = spinbranch(&["dims", "--p", "5", "--from", "12", "--to", "13"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.trim().lines().collect();
    assert_eq!(lines.len(), 2);
    let v: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(v["fstar_n"], "1280");
    assert!(v["a_n"].is_string());
}

#[test]
fn schur_values() {
    let out = spinbranch(&["schur", "--lambda", "11,2"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["schur_dim"], "1728");
    assert_eq!(v["super_dim"], "3456");
}

#[test]
fn crystal_writes_deterministic_dot() {
    let dir = std::env::temp_dir().join("spinbranch-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("crystal.dot");
    let run = || {
        let out = spinbranch(&[
            "crystal",
            "--p",
            "3",
            "--nmax",
            "5",
            "--dot",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        (stdout(&out), std::fs::read_to_string(&path).unwrap())
    };
    let (summary1, dot1) = run();
    let (summary2, dot2) = run();
    assert_eq!(summary1, summary2);
    assert_eq!(dot1, dot2);
    assert!(summary1.contains("level 5: 2"));
    assert!(dot1.starts_with("digraph crystal {"));
    assert!(dot1.contains("label=\"3,2\""));
    assert!(dot1.contains("[label=\"0\"]"));
}

#[test]
fn verify_pass_and_json() {
    let out = spinbranch(&["verify", "TStem", "--p", "3", "--from", "1", "--to", "12"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("pass"));

    let out = spinbranch(&[
        "verify", "LJS0", "--p", "5", "--from", "1", "--to", "14", "--json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["lemma_id"], "LJS0");
    assert_eq!(v["pass"], true);
    assert_eq!(v["counterexamples"], serde_json::json!([]));
    assert!(v["checked"].as_u64().unwrap() > 0);
}

#[test]
fn verify_failure_exits_one() {
    // The hidden mutation hook drops an engine rule; the depth-6 JS(0)
    // check at p = 3 then reports unexplained shortfalls.
    let out = spinbranch(&[
        "verify",
        "JS0_prop",
        "--p",
        "3",
        "--from",
        "1",
        "--to",
        "18",
        "--json",
        "--mutate-drop-lowest-rule",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["pass"], false);
    assert!(!v["counterexamples"].as_array().unwrap().is_empty());
}

#[test]
fn check_main_passes_and_reports() {
    let out = spinbranch(&["check-main", "--from", "12", "--to", "16"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["lemma_id"], "MainThm_char0");
    assert_eq!(v["pass"], true);
}

#[test]
fn list_lemmas_is_stable() {
    let out = spinbranch(&["list-lemmas"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.trim().lines().collect();
    assert_eq!(lines.first(), Some(&"TStem"));
    assert_eq!(lines.last(), Some(&"MainThm_char0"));
    assert_eq!(lines.len(), 20);
    assert_eq!(stdout(&spinbranch(&["list-lemmas"])), text);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["classify", "--p", "2", "--lambda", "2,1"],
        vec!["classify", "--p", "9", "--lambda", "2,1"],
        vec!["classify", "--p", "5", "--lambda", "1,2"],
        vec!["classify", "--p", "5", "--lambda", "x"],
        vec!["classify", "--p", "3", "--lambda", "3"],
        vec!["schur", "--lambda", "3,3"],
        vec!["verify", "NoSuchLemma", "--p", "3", "--from", "1", "--to", "5"],
        vec!["verify", "MainThm_char0", "--p", "5", "--from", "12", "--to", "13"],
        vec!["dims", "--p", "5", "--from", "2", "--to", "3"],
        vec!["no-such-command"],
    ] {
        let out = spinbranch(&args);
        assert_eq!(out.status.code(), Some(2), "args: {args:?}");
    }
}

#[test]
fn threads_flag_does_not_change_output() {
    let a = stdout(&spinbranch(&["check-main", "--from", "12", "--to", "15"]));
    let b = stdout(&spinbranch(&[
        "--threads", "3", "check-main", "--from", "12", "--to", "15",
    ]));
    let c = stdout(&spinbranch(&[
        "--threads", "1", "check-main", "--from", "12", "--to", "15",
    ]));
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn verify_partition_roundtrip_in_output() {
    // Partitions printed by enumerate parse back through classify.
    let out = spinbranch(&["enumerate", "--p", "5", "--n", "9"]);
    for line in stdout(&out).trim().lines() {
        let cls = spinbranch(&["classify", "--p", "5", "--lambda", line]);
        assert!(cls.status.success(), "line {line}");
        let v: serde_json::Value = serde_json::from_str(stdout(&cls).trim()).unwrap();
        assert_eq!(v["partition"], line);
    }
}
