//! The binary: exit codes and machine-readable output.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rna-topology"))
}

fn stdout(args: &[&str]) -> String {
    let out = bin().args(args).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn counts_and_exit_codes() {
    assert_eq!(stdout(&["count", "5", "--genus", "1", "--lambda", "1", "--r", "1"]).lines().last(), Some("5"));
    let bad = bin().args(["count", "5", "--genus", "1", "--lambda", "5", "--r", "1"]).output().unwrap();
    assert!(!bad.status.success());
    assert!(String::from_utf8_lossy(&bad.stderr).contains("lambda"));
    let parse = bin().args(["genus", "(.]"]).output().unwrap();
    assert!(!parse.status.success());
    assert!(!bin().args(["--ceiling", "25", "count", "3"]).output().unwrap().status.success());
}

#[test]
fn json_output_is_valid_and_exact() {
    let out = stdout(&["--format", "json", "count", "60", "--genus", "2"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let count = v["count"].as_str().unwrap();
    assert!(count.len() > 20, "exceeds 64 bits: {count}");
    assert_eq!(v["params"]["n"], 60);
}

#[test]
fn csv_output_has_one_header() {
    let out = stdout(&["--format", "csv", "series", "d0", "--order", "5"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "kind,lambda,mark,order,r,n,coeff,d1,d2");
    assert_eq!(lines.len(), 6);
    assert!(lines.iter().all(|l| l.split(',').count() == 9));
}

#[test]
fn sample_output_parses_back() {
    let out = stdout(&["--seed", "9", "sample", "--n", "40", "--genus", "1", "--count", "5"]);
    let mut lines = out.lines();
    assert!(lines.next().unwrap().starts_with("# sample"));
    for l in lines {
        let d: rna_topology::diagram::Diagram = l.parse().unwrap();
        assert_eq!(d.genus().genus, 1);
    }
}
