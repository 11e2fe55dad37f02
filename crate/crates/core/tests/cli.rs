use std::path::PathBuf;
use std::process::{Command, Output};

fn linarr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linarr")).args(args).output().expect("binary runs")
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_prints_profile() {
    let fixtures = data("realizations.cat");
    let o = linarr(&["analyze", &fixtures, "--entry", "non-Fano"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "non-Fano: d=7 t=(3,6) mu=27 simplicial=yes\n");
    let o = linarr(&["analyze", &fixtures, "--entry", "triangle"]);
    assert_eq!(stdout(&o), "triangle: d=3 t=(3) mu=3 simplicial=yes\n");
}

#[test]
fn malformed_input_exits_one() {
    let dir = std::env::temp_dir().join(format!("linarr-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.cat");
    std::fs::write(&bad, "arrangement A(19.5)\nlines 19\nend\n").unwrap();
    let o = linarr(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
    assert_eq!(linarr(&["analyze", "/nonexistent/file.cat"]).status.code(), Some(1));
    assert_eq!(linarr(&["analyze", &data("realizations.cat"), "--entry", "nope"]).status.code(), Some(1));
    assert_eq!(linarr(&["screen", "--format", "yaml"]).status.code(), Some(1));
}

#[test]
fn screen_flags_expected_rows() {
    let out = stdout(&linarr(&["screen"]));
    let line = |name: &str| out.lines().find(|l| l.starts_with(&format!("{name} "))).unwrap().to_owned();
    assert!(line("A(17,6)").ends_with("PASS"));
    assert!(line("A(9,1)").ends_with("fail"));
    assert!(line("A(13,4)").contains("complex"));
    assert_eq!(out.lines().filter(|l| l.ends_with("PASS")).count(), 12);
}

#[test]
fn classify_fixtures() {
    let fixtures = data("realizations.cat");
    let o = linarr(&["classify", &fixtures, "--entry", "non-Fano"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l == "FREE exponents (3,3)"));
    let o = linarr(&["classify", &fixtures, "--entry", "generic-4"]);
    assert!(stdout(&o).lines().any(|l| l == "NEARLY FREE exponents (2,2)"));
    assert_eq!(linarr(&["classify", &fixtures]).status.code(), Some(1));
    assert_eq!(linarr(&["classify", &fixtures, "--entry", "triangle", "--modulus", "15"]).status.code(), Some(1));
}

#[test]
fn classify_without_coordinates_exits_two() {
    let table = data("table1.cat");
    assert_eq!(linarr(&["classify", &table, "--entry", "A(7,1)"]).status.code(), Some(2));
}

#[test]
fn classify_seventeen_lines_modular() {
    let o = linarr(&["classify", &data("a17_6.cat"), "--modulus", "4611686018427387847", "--format", "json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "nearly_free");
    assert_eq!(v["exponents"], serde_json::json!([8, 9]));
    assert_eq!(v["mdr"], 8);
    assert_eq!(v["mu"], 191);
}

#[test]
fn json_is_byte_identical_across_runs() {
    let fixtures = data("realizations.cat");
    let args = ["classify", fixtures.as_str(), "--entry", "braid-sqrt3", "--format", "json"];
    assert_eq!(linarr(&args).stdout, linarr(&args).stdout);
    assert_eq!(linarr(&["table", "--format", "json"]).stdout, linarr(&["table", "--format", "json"]).stdout);
}

#[test]
fn table_formats() {
    let o = linarr(&["table"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.contains("flagged")).count(), 2); // row and summary
    let csv = stdout(&linarr(&["table", "--format", "csv"]));
    let mut reader = csv::Reader::from_reader(csv.as_bytes());
    assert_eq!(reader.headers().unwrap().len(), 6);
    assert_eq!(reader.records().count(), 78);
    let md = stdout(&linarr(&["table", "--format", "markdown"]));
    assert!(md.starts_with("| A(n,k) | (t2,t3,...) | mu | disc | roots | status |"));
    assert!(md.contains("| A(17,6) | (16,15,10,0,1) | 191 | 0 | r0=8 | ok |"));
}
