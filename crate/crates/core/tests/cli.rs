use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_holotorsion")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let (code, s) = run(args);
    (code, serde_json::from_str(&s).unwrap())
}

#[test]
fn spectrum_reports_the_triple_eigenvalue() {
    let (code, v) = json(&["spectrum", "--n", "2", "--alpha", "-1"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    let scan = &v["data"]["scans"][0];
    assert_eq!(scan["multiplicity"], 3);
    assert_eq!(scan["lambda1_exact"], "2");
}

#[test]
fn c2_csv_has_a_row_per_value() {
    let (code, s) = run(&["c2", "--value-max", "6", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "value,multiplicity,expected,verdict");
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[5], "6,9,9,PASS");
}

#[test]
fn solve_dbar_returns_z1() {
    let (code, v) = json(&["solve-dbar", "--n", "3", "--alpha", "-1/2", "--eta", "dz1"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    assert!(v.to_string().contains("\"f\":\"z1\""));
}

#[test]
fn bad_inputs_exit_with_two() {
    assert_eq!(run(&["spectrum", "--alpha", "1"]).0, 2);
    assert_eq!(run(&["spectrum", "--alpha", "-0.5"]).0, 2);
    assert_eq!(run(&["weight-scan", "--theorem", "nope"]).0, 2);
    assert_eq!(run(&["solve-dbar", "--n", "2", "--eta", "z2*dz1"]).0, 2);
}

#[test]
fn fixtures_pass() {
    assert_eq!(run(&["weight-scan", "--theorem", "beta_family"]).0, 0);
    assert_eq!(run(&["torsion-report", "--family", "hopf"]).0, 0);
    assert_eq!(run(&["all-fixtures"]).0, 0);
}
