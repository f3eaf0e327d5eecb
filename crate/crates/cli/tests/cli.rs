use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pbw-crystal"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

#[test]
fn roots_listing() {
    let o = run(&["roots", "--type", "D", "--rank", "4", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 12);
    assert!(stdout(&o).contains("γ_{1,2}"));
    let o = run(&["roots", "--type", "A", "--rank", "1"]);
    assert!(stdout(&o).contains("1 positive roots"));
    assert_eq!(run(&["roots", "--type", "A", "--rank", "0"]).status.code(), Some(2));
    assert_eq!(run(&["roots", "--type", "Q", "--rank", "3"]).status.code(), Some(2));
}

#[test]
fn convex_orders() {
    let o = run(&["convex-order", "--type", "A", "--rank", "3", "--word", "123121"]);
    assert!(stdout(&o).contains("1 ≺ 12 ≺ 123 ≺ 2 ≺ 23 ≺ 3"), "{}", stdout(&o));
    let o = run(&["convex-order", "--type", "D", "--rank", "4", "--word", "auto-D"]);
    assert!(stdout(&o).contains("word 123421234234"));
    assert!(stdout(&o).contains("1 ≺ 12 ≺ 123 ≺ 124 ≺ 1234 ≺ 12234 ≺ 2 ≺ 24 ≺ 23 ≺ 234 ≺ 3 ≺ 4"));
    let o = run(&["convex-order", "--type", "A", "--rank", "3", "--word", "auto-A"]);
    assert!(stdout(&o).contains("word 123121"));
    assert_eq!(run(&["convex-order", "--type", "A", "--rank", "3", "--word", ""]).status.code(), Some(2));
    assert_eq!(run(&["convex-order", "--type", "A", "--rank", "3", "--word", "1231"]).status.code(), Some(2));
}

#[test]
fn apply_models_agree() {
    let datum = "2,1,4,2,1,3,3,1,2,1,2,0";
    let mut outs = Vec::new();
    for model in ["pbw-general", "pbw-bracket"] {
        let o = run(&["apply", "--model", model, "--type", "D", "--rank", "4", "--vector", datum, "--ops", "f4"]);
        assert_eq!(o.status.code(), Some(0));
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["vector"], serde_json::json!([2, 1, 3, 2, 2, 3, 3, 1, 2, 1, 2, 0]));
        outs.push(stdout(&o));
    }
    assert_eq!(outs[0], outs[1]);
    let ops = "f1 f2 f4 f3 f2 e4 f1";
    let a = run(&["apply", "--model", "pbw-general", "--type", "D", "--rank", "4", "--ops", ops]);
    let b = run(&["apply", "--model", "pbw-bracket", "--type", "D", "--rank", "4", "--ops", ops]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn apply_null_and_errors() {
    let o = run(&["apply", "--model", "pbw-bracket", "--type", "A", "--rank", "2", "--ops", "e1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "null");
    let o = run(&["apply", "--model", "tableaux-D", "--rank", "4", "--ops", "f2 e2 e2"]);
    assert_eq!(stdout(&o).trim(), "null");
    assert_eq!(run(&["apply", "--model", "pbw-bracket", "--type", "A", "--rank", "2", "--ops", "f9"]).status.code(), Some(2));
    assert_eq!(run(&["apply", "--model", "tableaux-A", "--type", "D", "--rank", "4"]).status.code(), Some(2));
}

#[test]
fn apply_out_in_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (model, extra) in [("pbw-general", vec!["--type", "D"]), ("tableaux-D", vec![]), ("tableaux-A", vec![])] {
        let out = dir.path().join(format!("{model}.json"));
        let out_s = out.to_str().unwrap();
        let mut args = vec!["apply", "--model", model, "--rank", "4", "--ops", "f1 f2 f3 f4 f2"];
        args.extend(&extra);
        let o = run(&[args.as_slice(), &["--out", out_s]].concat());
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let first = std::fs::read_to_string(&out).unwrap();
        let mut args = vec!["apply", "--model", model, "--rank", "4", "--in", out_s];
        args.extend(&extra);
        let o = run(&args);
        assert_eq!(stdout(&o), first);
    }
}

#[test]
fn apply_explain() {
    let o = run(&[
        "apply", "--model", "pbw-bracket", "--type", "A", "--rank", "3", "--word", "123121", "--vector", "2,3,1,3,3,2", "--ops", "f2",
        "--explain",
    ]);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.lines().any(|l| l.replace(' ', "") == ")))(()))"), "{err}");
    assert!(err.contains("f_2: new part 2"), "{err}");
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["vector"], serde_json::json!([2, 3, 1, 4, 3, 2]));
}

#[test]
fn semi_adapted_verdicts() {
    let o = run(&["check-semi-adapted", "--type", "D", "--rank", "5", "--word", "auto-D", "--all"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.contains(": yes")).count(), 5);
    let o = run(&["check-semi-adapted", "--type", "A", "--rank", "4", "--word", "auto-A", "--all", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["results"].as_array().unwrap().iter().all(|r| r["outcome"]["verdict"] == "certified"));
    // 212321 is not semi-adapted for i = 3
    let mut saw_no = false;
    for i in ["1", "2", "3"] {
        let o = run(&["check-semi-adapted", "--type", "A", "--rank", "3", "--word", "212321", "--i", i]);
        if stdout(&o).contains(": no") {
            saw_no = true;
            assert_eq!(o.status.code(), Some(1));
        }
    }
    assert!(saw_no);
    let o = run(&["check-semi-adapted", "--type", "A", "--rank", "4", "--word", "auto-A", "--i", "4", "--cap", "0"]);
    assert!(stdout(&o).contains("inconclusive"));
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn graphs() {
    let o = run(&["graph", "--model", "pbw-bracket", "--type", "A", "--rank", "2", "--depth", "0", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 1);
    let o = run(&["graph", "--model", "tableaux-D", "--rank", "4", "--depth", "2"]);
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph crystal {") && dot.trim_end().ends_with('}'));
    assert_eq!(dot.matches("->").count(), 4 + 16);
    let count = |model: &str, extra: &[&str]| {
        let o = run(&[&["graph", "--model", model, "--rank", "4", "--depth", "4", "--format", "json"], extra].concat());
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        v["nodes"].as_array().unwrap().len()
    };
    let t = count("tableaux-D", &[]);
    assert_eq!(t, count("pbw-general", &["--type", "D"]));
    assert_eq!(t, count("pbw-bracket", &["--type", "D"]));
}

#[test]
fn verify_suites() {
    let o = run(&["verify", "--suite", "bracket-vs-general", "--type", "D", "--rank", "4", "--depth", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    let o = run(&["verify", "--suite", "theta", "--type", "A", "--rank", "3", "--depth", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(run(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "psi", "--type", "A", "--rank", "3"]).status.code(), Some(2));
    let a = run(&["verify", "--suite", "transport-roundtrip", "--type", "A", "--rank", "3", "--cases", "10", "--seed", "5"]);
    let b = run(&["verify", "--suite", "transport-roundtrip", "--type", "A", "--rank", "3", "--cases", "10", "--seed", "5"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_fixtures() {
    let names = ["d4_f4_general.json", "d4_f4_bracket.json", "a3_f2_bracket.json", "a3_tableau_f2.json", "d4_highest_e.json"];
    for name in names {
        let path = fixture(name);
        let o = run(&["verify", "--fixture", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
    }
    // corrupt one expected value
    let text = std::fs::read_to_string(fixture("d4_f4_general.json")).unwrap();
    let corrupted = text.replace("[2, 1, 3, 2, 2, 3, 3, 1, 2, 1, 2, 0]", "[2, 1, 3, 2, 2, 3, 3, 1, 2, 1, 1, 1]");
    assert_ne!(text, corrupted);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, corrupted).unwrap();
    let o = run(&["verify", "--fixture", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], false);
    assert_eq!(v["failures"][0]["got"]["vector"], serde_json::json!([2, 1, 3, 2, 2, 3, 3, 1, 2, 1, 2, 0]));
}
