use std::process::{Command, Output};

use floorgap::AlgNum;

fn floorgap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_floorgap"))
        .args(args)
        .env_remove("FLOORGAP_CONSTANTS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = floorgap(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

#[test]
fn eval_values() {
    let tau: i64 = ok(&["eval", "--alpha", "(1+1*sqrt(2017))/2", "--n", "1"])
        .trim()
        .parse()
        .unwrap();
    assert!((1..=22).contains(&tau));
    assert_eq!(ok(&["eval", "--alpha", "pi", "--n", "7"]).trim(), "4");
    assert_eq!(ok(&["eval", "--alpha", "3/1", "--n", "5"]).trim(), "0");
    assert_eq!(
        ok(&[
            "eval",
            "--alpha",
            "(0+1*sqrt(2))/1",
            "--n",
            "1",
            "--variant",
            "g"
        ])
        .trim(),
        "-1"
    );
    assert_eq!(
        ok(&["eval", "--alpha", "3/2", "--n", "1", "--variant", "h"]).trim(),
        "-1"
    );
    assert_eq!(
        ok(&["eval", "--alpha", "e", "--n", "11", "--format", "records"]).trim(),
        "alpha=e n=11 value=3"
    );
}

#[test]
fn ranges() {
    assert!(ok(&["range", "--alpha", "5/2"]).contains("range = {0,1}"));
    assert!(ok(&["range", "--alpha", "1/7"]).contains("range = {0}"));
    let rec = ok(&[
        "range",
        "--alpha",
        "(0+1*sqrt(2))/1",
        "--scan",
        "1000",
        "--format",
        "records",
    ]);
    assert!(
        rec.contains("observed={1,2}") && rec.contains("class=C"),
        "{rec}"
    );
    let rec = ok(&["range", "--alpha", "11/3", "--format", "records"]);
    assert!(
        rec.contains("range={0,1,2,3}") && rec.contains("predicted={0,1,2,3}"),
        "{rec}"
    );
}

#[test]
fn am_sets_and_figure() {
    assert_eq!(
        ok(&["am", "--m", "2"]).lines().next().unwrap(),
        "[(0+1*sqrt(2))/2, 1/1)  ≈ [0.70711, 1)"
    );
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("fig.svg");
    let text = ok(&["am", "--union", "50", "--svg", svg.to_str().unwrap()]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 10);
    assert!(
        lines[0].starts_with("[(0+1*sqrt(2))/10, 1/7)"),
        "{}",
        lines[0]
    );
    assert!(
        lines[9].starts_with("[(0+2*sqrt(141))/47, 1/1)"),
        "{}",
        lines[9]
    );
    let svg = std::fs::read_to_string(svg).unwrap();
    assert_eq!(svg.matches("class=\"union\"").count(), 10);
    let rows: std::collections::BTreeSet<&str> = svg
        .split("class=\"am m")
        .skip(1)
        .map(|s| s.split('"').next().unwrap())
        .collect();
    assert_eq!(rows.len(), 49);
}

#[test]
fn printed_numbers_reparse() {
    let rec = ok(&["am", "--union", "30", "--format", "records"]);
    for line in rec.lines() {
        for field in line.split(' ') {
            if let Some(v) = field
                .strip_prefix("lo=")
                .or_else(|| field.strip_prefix("hi="))
            {
                let x: AlgNum = v.parse().unwrap();
                assert_eq!(x.to_string(), v);
            }
        }
    }
}

#[test]
fn sweeps() {
    let out = ok(&[
        "sweep", "c317", "--bmax", "2", "--smax", "1", "--format", "records",
    ]);
    assert!(out.starts_with("b=2 a=1 s=1 alpha=3/2 predicted={0,1} computed={0,1} status=match"));
    assert!(ok(&["sweep", "c317", "--bmax", "10", "--smax", "6"])
        .contains("186 cases checked, 0 counterexamples"));
    assert!(ok(&["sweep", "c45", "--mmax", "50"]).contains("10 intervals"));
    let out = ok(&[
        "sweep", "c47", "--kmax", "10", "--tmax", "10", "--scan", "1000", "--format", "records",
    ]);
    assert_eq!(out.matches("status=survivor").count(), 1);
    ok(&[
        "sweep", "c43", "--kmax", "10", "--tmax", "10", "--scan", "2000",
    ]);
}

#[test]
fn records_are_deterministic() {
    let args = [
        "sweep", "c317", "--bmax", "8", "--smax", "4", "--format", "records",
    ];
    assert_eq!(ok(&args), ok(&args));
}

#[test]
fn witnesses() {
    assert_eq!(
        ok(&["witness", "bezout", "--a", "2", "--b", "3"]).trim(),
        "7"
    );
    let n: u64 = ok(&[
        "witness",
        "window",
        "--alpha",
        "(1+1*sqrt(5))/2",
        "--lo",
        "3/5",
        "--hi",
        "13/20",
        "--scan",
        "100",
    ])
    .trim()
    .parse()
    .unwrap();
    assert!(n <= 100);
    let out = floorgap(&[
        "witness",
        "window",
        "--alpha",
        "(1+1*sqrt(5))/2",
        "--lo",
        "999999/1000000",
        "--hi",
        "1/1",
        "--scan",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(floorgap(&["eval", "--n", "1"]).status.code(), Some(1));
    assert_eq!(
        floorgap(&["eval", "--alpha", "(1+", "--n", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        floorgap(&["witness", "bezout", "--a", "2", "--b", "4"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(floorgap(&["--help"]).status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("short.txt");
    std::fs::write(&file, "pi=3.14\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_floorgap"))
        .args(["eval", "--alpha", "pi", "--n", "100000"])
        .env("FLOORGAP_CONSTANTS", &file)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}
