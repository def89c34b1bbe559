use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn heyting(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heyting")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = heyting(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(stdout(&o).trim()).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("heyting-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn ds_of_excluded_middle_on_three_chain() {
    let o = heyting(&["ds", "--chain", "3", "--eq", "x | ~x = top"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{\"num\":\"2\",\"den\":\"3\"}\n");

    let v = json(&["ds", "--boolean", "2", "--formula", "exists y. x = ~y"]);
    assert_eq!(v, serde_json::json!({"num": "1", "den": "1"}));
}

#[test]
fn ds_reads_an_algebra_file() {
    let path = temp_file("b1.json", r#"{"size":2,"leq":[[1,1],[0,1]]}"#);
    let v = json(&["ds", "--algebra", path.to_str().unwrap(), "--eq", "~x = top", "--detail"]);
    assert_eq!(v["ds"], serde_json::json!({"num": "1", "den": "2"}));
    assert_eq!(v["total"], "2");
}

#[test]
fn classify_outcomes() {
    assert_eq!(json(&["classify1", "--term", "p -> p"]), serde_json::json!({"outcome": "always_true"}));
    assert_eq!(json(&["classify1", "--eq", "p = ~p"]), serde_json::json!({"outcome": "never_satisfiable", "rn": "i0"}));
    assert_eq!(
        json(&["classify1", "--term", "p | ~p"]),
        serde_json::json!({"outcome": "gap", "rn": "d2", "epsilon": {"num": "1", "den": "3"}})
    );
    assert_eq!(json(&["classify1", "--term", "~p | ~~p"]), serde_json::json!({"outcome": "no_gap", "rn": "d3"}));
    assert_eq!(json(&["classify1", "--term", "~~p -> p"]), serde_json::json!({"outcome": "no_gap", "rn": "i3"}));
}

#[test]
fn ipc_provability() {
    assert_eq!(json(&["ipc", "--term", "p -> ~~p"]), serde_json::json!({"provable": true}));
    assert_eq!(json(&["ipc", "--term", "~~p -> p"]), serde_json::json!({"provable": false}));
    assert_eq!(json(&["ipc", "--term", "q", "--hyp", "p", "--hyp", "p -> q"]), serde_json::json!({"provable": true}));
}

#[test]
fn enumerate_summary_counts() {
    let o = heyting(&["enumerate", "--max-size", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    let summary: Value = serde_json::from_str(lines.last().unwrap()).unwrap();
    assert_eq!(summary["summary"]["counts"], serde_json::json!({"2": 1, "3": 1, "4": 2, "5": 3, "6": 5, "7": 8}));
    assert_eq!(summary["summary"]["total"], 20);
    assert_eq!(lines.len(), 21);
}

#[test]
fn topology_from_file() {
    let path = temp_file("sierpinski.json", r#"{"points":2,"opens":[0,1,3]}"#);
    let v = json(&["topo", "--topology", path.to_str().unwrap()]);
    assert_eq!(v["t0"], true);
    assert_eq!(v["discrete"], false);
    assert_eq!(v["clopen"], 2);

    let bad = temp_file("bad.json", r#"{"points":2,"opens":[0,1,2]}"#);
    assert_eq!(heyting(&["topo", "--topology", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn blackbox_test_reports() {
    let v = json(&["blackbox-test", "--boolean", "2", "--seed", "5", "--trials", "2000"]);
    assert_eq!(v["boolean"], true);
    assert_eq!(v["accepted"], 2000);
    assert_eq!(v["pass"], true);

    let v = json(&["blackbox-test", "--chain", "3", "--seed", "5", "--trials", "2000"]);
    assert_eq!(v["boolean"], false);
    assert!(v["accept_rate"].as_f64().unwrap() < 0.6);
    assert_eq!(v["pass"], true);
}

#[test]
fn output_is_deterministic() {
    let runs = [
        vec!["blackbox-test", "--chain", "4", "--seed", "9", "--trials", "3000"],
        vec!["gap-scan", "--eq", "~x | ~~x = top", "--max-size", "7"],
        vec!["ds", "--chain", "6", "--eq", "(x -> y) | (y -> x) = top", "--detail"],
    ];
    for args in runs {
        let base = stdout(&heyting(&args));
        assert_eq!(base, stdout(&heyting(&args)), "{args:?}");
        for jobs in ["1", "2"] {
            let mut with_jobs = vec!["--jobs", jobs];
            with_jobs.extend_from_slice(&args);
            assert_eq!(base, stdout(&heyting(&with_jobs)), "{with_jobs:?}");
        }
    }
}

#[test]
fn exit_codes() {
    assert_eq!(heyting(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(heyting(&["ds", "--chain", "3"]).status.code(), Some(2));
    assert_eq!(heyting(&["ds", "--chain", "3", "--eq", "x = "]).status.code(), Some(2));
    assert_eq!(heyting(&["ds", "--chain", "3", "--boolean", "2", "--eq", "x = x"]).status.code(), Some(2));
    assert_eq!(heyting(&["topo", "--all", "5"]).status.code(), Some(3));
    assert_eq!(heyting(&["--help"]).status.code(), Some(0));
    let missing = heyting(&["ds", "--algebra", "/nonexistent/algebra.json", "--eq", "x = x"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).starts_with("error:"));
}

#[test]
fn verify_single_criterion() {
    let o = heyting(&["verify", "--criterion", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v[0]["id"], "4");
    assert_eq!(v[0]["passed"], true);
    assert!(String::from_utf8_lossy(&o.stderr).contains("PASS"));
}
