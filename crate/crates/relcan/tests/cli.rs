use std::process::{Command, Output};

fn relcan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relcan")).args(args).output().unwrap()
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(relcan(&[]).status.code(), Some(1));
    assert_eq!(relcan(&["resolve", "--genus", "x", "--gonality", "4"]).status.code(), Some(1));
    assert_eq!(relcan(&["construct", "--genus", "5", "--gonality", "5"]).status.code(), Some(1));
    assert_eq!(relcan(&["--help"]).status.code(), Some(0));
}

#[test]
fn missing_input_exits_three() {
    let out = relcan(&["check", "--in", "/nonexistent/records.jsonl"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn malformed_record_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.jsonl");
    std::fs::write(&path, "\n{\"schemaVersion\": 1}\n").unwrap();
    let out = relcan(&["check", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains(":2:"));
}

#[test]
fn construct_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.json");
    let out = relcan(&["construct", "--genus", "4", "--gonality", "3", "--seed", "1", "--json", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["quadrics"].as_array().unwrap().len(), 1);
    assert_eq!(v["cubics"].as_array().unwrap().len(), 1);
    assert_eq!(v["record"]["hilbert"]["degree"], 6);
}

#[test]
fn resolve_prints_betti_table() {
    let out = relcan(&["resolve", "--genus", "9", "--gonality", "4", "--seed", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("total: 1 2 1"), "{text}");
    assert!(text.contains("N_1 = 2^2"), "{text}");
}

#[test]
fn batch_report_and_tables() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("grid.json");
    std::fs::write(&cfg, r#"{"genusRange":[6],"gonalityRange":[3,4],"trialsPerCell":2}"#).unwrap();
    let jsonl = dir.path().join("r.jsonl");
    let s = |p: &std::path::Path| p.to_str().unwrap().to_string();
    assert!(relcan(&["batch", "--config", &s(&cfg), "--out", &s(&jsonl)]).status.success());
    let report = dir.path().join("report.md");
    assert!(relcan(&["conjectures", "--in", &s(&jsonl), "--out", &s(&report)]).status.success());
    assert!(std::fs::read_to_string(&report).unwrap().contains("| predicate |"));
    let tables = dir.path().join("tables");
    assert!(relcan(&["tables", "--in", &s(&jsonl), "--format", "csv", "--out", &s(&tables)]).status.success());
    let csv = std::fs::read_to_string(tables.join("betti_g06_k04.csv")).unwrap();
    let table = relcan::tables::parse_csv(&csv).unwrap();
    assert_eq!(table.totals(), vec![1, 2, 1]);
    assert!(tables.join("index.csv").exists());
}

#[test]
fn empty_input_gives_empty_report() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("empty.jsonl");
    std::fs::write(&input, "").unwrap();
    let out = dir.path().join("r.md");
    let res = relcan(&["conjectures", "--in", input.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(0));
}
