use std::process::{Command, Output};

fn tiltval(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tiltval"))
        .args(args)
        .env_remove("TILTVAL_CACHE")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn verify_a1_json_two_sided() {
    let out = tiltval(&["verify", "--type", "A1", "--p", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["label"], "A1");
    assert_eq!(doc["p"], 5);
    assert_eq!(doc["all_verified"], true);
    let reports = doc["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 4);
    for r in reports {
        assert_eq!(r["status"], "verified");
    }
    let dims: Vec<&str> = reports
        .iter()
        .map(|r| r["witness"]["dimension"].as_str().unwrap())
        .collect();
    assert!(dims.contains(&"10"));
}

#[test]
fn verify_text_failure_exits_one() {
    // p = 5 is the first legal prime for A3 (h = 4) but the a=3 cells pick
    // up an extra factor of 5 at every alcove weight
    let out = tiltval(&["verify", "--type", "A3", "--p", "5", "--format", "text"]);
    assert_eq!(out.status.code(), Some(1));
    let s = stdout(&out);
    assert!(s.contains("failed-p-too-small"));
    assert!(s.contains("NOT all verified"));
}

#[test]
fn verify_search_cap_exits_one() {
    let out = tiltval(&["verify", "--type", "A1", "--p", "5", "--max-y-length", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["all_verified"], false);
    let statuses: Vec<&str> = doc["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["status"].as_str().unwrap())
        .collect();
    assert!(statuses.contains(&"search-exhausted"));
}

#[test]
fn info_text_g2() {
    let out = tiltval(&["info", "--type", "G2"]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    assert!(s.contains("rank 2"));
    assert!(s.contains("positive roots 6"));
    assert!(s.contains("coxeter number 6"));
    assert!(s.contains("parabolic omit 0: order 12 (gens 1,2), mu = (0, 0)"));
    assert!(s.contains("parabolic omit 1: order 4 (gens 0,2), mu = (1/2, 0)"));
    assert!(s.contains("parabolic omit 2: order 6 (gens 0,1), mu = (0, 1/3)"));
}

#[test]
fn info_csv_a1() {
    let out = tiltval(&["info", "--type", "A1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "label,rank,positive_roots,coxeter_number,generators");
    assert_eq!(lines[1], "A1,1,1,2,2");
    assert_eq!(lines[2], "omitted,gens,order,mu");
    assert_eq!(lines[3], "0,1,2,0");
    assert_eq!(lines[4], "1,0,2,1");
}

#[test]
fn cells_text_a2() {
    let out = tiltval(&["cells", "--type", "A2", "--omit", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    assert!(s.contains("parabolic omit 0 (gens 1,2): order 6"));
    assert!(s.contains("cell 0: a=0 size=1 [e]"));
    assert!(s.contains("cell 1: a=1 size=4"));
    assert!(s.contains("cell 2: a=3 size=1 [1,2,1]"));

    let csv = tiltval(&["cells", "--type", "A2", "--omit", "0", "--format", "csv"]);
    let lines: Vec<String> = stdout(&csv).lines().map(String::from).collect();
    assert_eq!(lines[0], "omitted,gens,cell,a,size,elements");
    assert_eq!(lines[1], "0,1-2,0,0,1,e");
    assert_eq!(lines[3], "0,1-2,2,3,1,1-2-1");
}

#[test]
fn kl_spot_value() {
    let out = tiltval(&["kl", "--type", "A3", "--x", "2", "--w", "2,1,3,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "P[2 ; 2,1,3,2] = 1 + q");

    let csv = tiltval(&[
        "kl", "--type", "A3", "--x", "2", "--w", "2,1,3,2", "--format", "csv",
    ]);
    assert_eq!(stdout(&csv), "x,w,poly\n2,2-1-3-2,1 + q\n");
}

#[test]
fn verify_csv_shape() {
    let out = tiltval(&["verify", "--type", "A1", "--p", "5", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[0].starts_with("label,p,omitted,cell,a,size,status"));
    for line in &lines[1..] {
        assert!(line.starts_with("A1,5,"));
        assert!(line.contains(",verified,"));
        assert_eq!(line.matches(',').count(), 13);
    }
}

#[test]
fn delta_text_a1() {
    let out = tiltval(&["delta", "--type", "A1", "--w", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "2*m1");
}

#[test]
fn usage_errors_exit_two() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["info", "--type", "H3"],
        vec!["kl", "--type", "A1", "--x", "1,1", "--w", "1"],
        vec!["kl", "--type", "A1", "--x", "3", "--w", "1"],
        vec!["verify", "--type", "A1", "--p", "6"],
        vec!["verify", "--type", "A1", "--p", "2"],
        vec!["verify", "--type", "A2", "--p", "3"],
        vec!["cells", "--type", "A1", "--omit", "5"],
    ];
    for args in cases {
        let out = tiltval(&args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}: {}", stderr(&out));
        assert!(stderr(&out).starts_with("error:"), "args {args:?}");
    }
}

#[test]
fn cache_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a2.json");
    let args = [
        "cells",
        "--type",
        "A2",
        "--cache",
        path.to_str().unwrap(),
    ];
    let first = tiltval(&args);
    assert_eq!(first.status.code(), Some(0));
    let bytes1 = std::fs::read(&path).unwrap();
    let second = tiltval(&args);
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(stdout(&first), stdout(&second));
    let bytes2 = std::fs::read(&path).unwrap();
    assert_eq!(bytes1, bytes2);
}

#[test]
fn cache_env_var_overrides_flag() {
    let dir = tempfile::tempdir().unwrap();
    let env_path = dir.path().join("env.json");
    let flag_path = dir.path().join("flag.json");
    let out = Command::new(env!("CARGO_BIN_EXE_tiltval"))
        .args([
            "kl",
            "--type",
            "A1",
            "--x",
            "e",
            "--w",
            "0,1,0",
            "--cache",
            flag_path.to_str().unwrap(),
        ])
        .env("TILTVAL_CACHE", &env_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(env_path.exists());
    assert!(!flag_path.exists());
}

#[test]
fn corrupt_cache_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.jsonl");
    std::fs::write(&path, "{\"version\":1,\"label\":\"A1\",\"records\":7}\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_tiltval"))
        .args(["kl", "--type", "A1", "--x", "e", "--w", "1"])
        .env("TILTVAL_CACHE", &path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("record count"));
}

#[test]
fn cache_for_wrong_type_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a2.jsonl");
    let make = tiltval(&["cells", "--type", "A2", "--cache", path.to_str().unwrap()]);
    assert_eq!(make.status.code(), Some(0));
    let out = Command::new(env!("CARGO_BIN_EXE_tiltval"))
        .args(["kl", "--type", "A1", "--x", "e", "--w", "1"])
        .env("TILTVAL_CACHE", &path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("cache is for type A2"));
}
