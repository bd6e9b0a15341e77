use std::process::{Command, Output};

use num_rational::BigRational;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xxz-lbf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(o: &Output) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    r.records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect()
}

#[test]
fn fidelity_of_two_plus_two() {
    let o = run(&["lbf", "--n1", "2", "--n2", "2", "--x", "1"]);
    assert!(o.status.success());
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][5], "11/12");
    let f: f64 = rows[0][6].parse().unwrap();
    assert!((f - (132.0f64 / 121.0).ln()).abs() < 1e-15);
}

#[test]
fn odd_odd_is_an_argument_error() {
    let o = run(&["lbf", "--n1", "1", "--n2", "1", "--x", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ill-defined for odd-odd"));
}

#[test]
fn argument_errors() {
    for args in [
        &["lbf", "--n1", "2", "--n2", "2", "--x", "0"][..],
        &["lbf", "--n1", "2", "--n2", "2", "--x", "abc"],
        &[
            "lbf",
            "--n1",
            "2",
            "--n2",
            "2",
            "--x",
            "1",
            "--precision",
            "20",
        ],
        &["verify", "nonsense"],
        &["compare", "--n", "6", "--x", "1"],
        &["asymptote", "--n1", "3", "--n2", "5", "--x", "1"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn large_bipartition_row() {
    let o = run(&[
        "lbf", "--n1", "36", "--n2", "36", "--x", "1/2", "--format", "csv",
    ]);
    assert!(o.status.success());
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 1);
    assert!(rows[0][6].parse::<f64>().unwrap().is_finite());
}

#[test]
fn sweep_row_counts() {
    for (n, x, want) in [("72", "1/2", 35), ("73", "0.5", 36), ("8", "1", 3)] {
        let o = run(&["compare", "--n", n, "--x", x]);
        assert!(o.status.success());
        let text = stdout(&o);
        assert!(text.starts_with("N,N1,N2,xi,F_exact,F_asymp,diff\n"));
        assert_eq!(csv_rows(&o).len(), want, "N = {n}");
    }
}

#[test]
fn output_is_deterministic() {
    let a = run(&["compare", "--n", "20", "--x", "7/5"]);
    let b = run(&["compare", "--n", "20", "--x", "7/5"]);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["verify", "characters", "--seed", "5"]);
    let b = run(&["verify", "characters", "--seed", "5"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_rationals_round_trip() {
    use num_traits::Zero;
    let o = run(&[
        "overlap", "--n1", "6", "--n2", "5", "--x", "7/5", "--format", "json",
    ]);
    assert!(o.status.success());
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    for key in ["config", "rows", "checks"] {
        assert!(doc.get(key).is_some(), "{key}");
    }
    let s = doc["rows"][0]["overlap"].as_str().unwrap();
    let v: BigRational = s.parse().unwrap();
    assert!(!v.is_zero());
    assert_eq!(v.to_string(), s);
    assert_eq!(doc["config"]["x"], "7/5");

    // both routes agree
    let c = run(&[
        "overlap",
        "--n1",
        "6",
        "--n2",
        "5",
        "--x",
        "1.4",
        "--route",
        "contraction",
        "--format",
        "json",
    ]);
    let dc: Value = serde_json::from_slice(&c.stdout).unwrap();
    assert_eq!(dc["rows"][0]["overlap"], doc["rows"][0]["overlap"]);
}

#[test]
fn verify_suites_pass() {
    for args in [
        &["verify", "qkz"][..],
        &["verify", "oracle", "--max-n", "8"],
    ] {
        let o = run(args);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
        let checks = doc["checks"].as_array().unwrap();
        assert!(!checks.is_empty());
        assert!(checks.iter().all(|c| c["passed"] == true));
    }
}

#[test]
fn verify_csv_lists_checks() {
    let o = run(&["verify", "qkz", "--format", "csv"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("check,passed,detail,residual\n"));
}

#[test]
fn writes_to_file() {
    let dir = std::env::temp_dir().join(format!("xxz-lbf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("char.json");
    let o = run(&[
        "char",
        "--n",
        "7",
        "--x",
        "2",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["rows"][0]["N"], 7);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn series_row() {
    let o = run(&["asymptote", "--n1", "40", "--n2", "33", "--x", "1/2"]);
    assert!(o.status.success());
    let rows = csv_rows(&o);
    let r: f64 = rows[0][4].parse().unwrap();
    assert!((r - 1.5).abs() < 1e-12);
}
