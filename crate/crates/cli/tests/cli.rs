use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_serieseig")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn series_json_matches_recurrence() {
    let o = run(&["series", "--a", "1", "--j-max", "2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["coefficients"]["1"], serde_json::json!(["1", "-1/2"]));
    assert_eq!(v["coefficients"]["2"], serde_json::json!(["1/2", "-1/2", "1/24"]));
}

#[test]
fn hill_csv_columns_and_harmonic_roots() {
    let o = run(&["hill", "--potential", "harmonic", "--a", "1/2", "--m-min", "3", "--m-max", "3", "--interval", "0,12"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("M,root,bracket_width,interval_lo,interval_hi"));
    let roots: Vec<&str> = lines.map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(roots.len(), 3);
    assert!(roots[0].starts_with("1.0000000000"));
    assert!(roots[2].starts_with("9.0000000000"));
}

#[test]
fn hankel_writes_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("h.csv");
    let json = dir.path().join("h.json");
    let o = run(&[
        "hankel", "--a", "1", "--d-min", "2", "--d-max", "4", "--interval", "0,4", "--output",
        csv.to_str().unwrap(), "--json", json.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("D,d,root,bracket_width,backend,exact_confirmed\n"));
    // D=2 holds the exact root 2/3
    assert!(text.lines().any(|l| l.starts_with("2,0,0.6666666666666666666666667")));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
}

#[test]
fn exact_backend_agrees_with_float() {
    let args = ["hankel", "--a", "1", "--d-min", "3", "--d-max", "3", "--interval", "0,3", "--grid", "60"];
    let float = stdout(&run(&args));
    let mut exact_args = args.to_vec();
    exact_args.extend(["--backend", "exact"]);
    let exact = stdout(&run(&exact_args));
    let roots = |t: &str| t.lines().skip(1).map(|l| l.split(',').nth(2).unwrap().to_string()).collect::<Vec<_>>();
    assert!(!roots(&float).is_empty());
    assert_eq!(roots(&float), roots(&exact));
    assert!(exact.lines().skip(1).all(|l| l.contains(",exact,")));
}

#[test]
fn oracle_reports_estimate() {
    let o = run(&["oracle", "--bracket", "0.9,1.2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("E = 1.060362090"), "{text}");
    assert!(text.contains("error estimate = "));
}

#[test]
fn solve_both_methods() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("run");
    let cfg = dir.path().join("run.json");
    let doc = serde_json::json!({
        "potential": {"kind": "polynomial", "v": ["0", "1"]},
        "a": "1", "method": "both", "orders": {"min": 5, "max": 8},
        "interval": ["0.9", "1.2"], "output": prefix,
    });
    fs::write(&cfg, doc.to_string()).unwrap();
    let o = run(&["solve", "--config", cfg.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(dir.path().join("run.hill.csv").exists());
    assert!(dir.path().join("run.hankel.csv").exists());
    let out: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("run.json")).unwrap()).unwrap();
    let last = out["hankel_sequence"].as_array().unwrap().last().unwrap().as_str().unwrap().to_string();
    assert!(last.starts_with("1.06036"), "{last}");
    assert!(out["hankel_report"]["stable_digits"].is_string());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    fs::write(&cfg, r#"{"potential": {"kind": "polynomial", "v": ["1"]}, "a": "1", "method": "hill", "orders": {"min": 2, "max": 3}, "interval": ["0", "2"], "output": "x", "extra": 1}"#).unwrap();
    assert_eq!(run(&["solve", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["hill", "--interval", "2,1"]).status.code(), Some(2));
    assert_eq!(run(&["hankel", "--potential", "rational", "--g", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["oracle", "--bracket", "1.5,2"]).status.code(), Some(3));
    assert_eq!(run(&["reproduce", "table9"]).status.code(), Some(2));
}

#[test]
fn reproduce_table2_stated_window_mismatches() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["reproduce", "table2", "--out-dir", dir.path().to_str().unwrap(), "--interval", "0.5,1.5"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(dir.path().join("table2.json").exists());
    let cmp = fs::read_to_string(dir.path().join("table2_comparison.csv")).unwrap();
    assert_eq!(cmp.lines().filter(|l| l.contains(",FAIL,")).count(), 4);

    let o = run(&["reproduce", "table2", "--out-dir", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
}
