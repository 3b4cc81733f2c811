use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multbound"))
        .args(args)
        .env_remove("MULTBOUND_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(stdout(o).trim()).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn mult_examples() {
    let o = run(&["mult", "--example", "parabola", "--poly", "y"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{\"result\":\"exact\",\"value\":2}\n");

    for p in ["X^2 - Y", "X - 1"] {
        let o = run(&["mult", "--example", "ramanujan", "--poly", p]);
        assert_eq!(o.status.code(), Some(0));
        let v = json(&o);
        assert_eq!((v["result"].as_str(), v["value"].as_u64()), (Some("exact"), Some(1)));
        assert!(v["bounds"].as_array().unwrap().iter().all(|b| b["holds"] == true));
    }

    let o = run(&["mult", "--example", "power-a", "--a", "7"]);
    assert_eq!(json(&o)["value"], 7);

    let o = run(&[
        "mult", "--field", "1", "--field", "2*x", "--vars", "x,y", "--point", "0,0", "--poly", "y",
        "--theorem", "nmorse",
    ]);
    let v = json(&o);
    assert_eq!(v["value"], 2);
    assert_eq!(v["bounds"][0]["value"], "32");
}

#[test]
fn problem_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["example", "power-a", "--a", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let file = write(dir.path(), "power.json", &stdout(&o));
    let o = run(&["mult", "--problem", &file]);
    assert_eq!(stdout(&o), "{\"result\":\"exact\",\"value\":5}\n");

    let o = run(&["example", "ramanujan"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["version"], "multbound/1");
    assert_eq!(v["chi"], 2);
    assert_eq!(v["trajectory"]["x0"], serde_json::json!(["1", "1", "1"]));

    let broken = write(dir.path(), "broken.json", "{\"version\":\"multbound/9\"}");
    assert_eq!(run(&["mult", "--problem", &broken]).status.code(), Some(3));
}

#[test]
fn bound_violation_candidate_exits_2() {
    // The germ (t, t^20) with field ∂x has nmorse bound 8 for P = y, so the
    // oracle stops at the bound and flags it.
    let dir = tempfile::tempdir().unwrap();
    let mut v: Value = serde_json::from_str(&stdout(&run(&["example", "power-a", "--a", "20"]))).unwrap();
    v["field"] = serde_json::json!({"components": ["1", "0"]});
    v["bounds"] = serde_json::json!(["nmorse"]);
    let file = write(dir.path(), "bad.json", &v.to_string());
    let o = run(&["mult", "--problem", &file]);
    assert_eq!(o.status.code(), Some(2));
    let out = json(&o);
    assert_eq!(out["result"], "at_least");
    assert_eq!(out["value"], 9);
    assert_eq!(out["bounds"][0]["holds"], false);
}

#[test]
fn bound_subcommand() {
    let o = run(&["bound", "--theorem", "pure", "-n", "1", "-d", "2", "--delta", "1", "--chi", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["value"], "20");

    let o = run(&["bound", "--theorem", "mixed-multi", "--dz", "1", "--dx", "1", "-q", "3", "--chi", "2"]);
    let v = json(&o);
    assert_eq!(v["value"], "12");
    assert_eq!(v["constants"]["beta_1"], "1");

    let o = run(&["bound", "--theorem", "caseB", "-m", "1", "-D", "2", "--dz", "1", "--dx", "1", "-q", "3", "--chi", "2"]);
    assert_eq!(json(&o)["value"], "20");

    let o = run(&["bound", "--theorem", "toric", "--example", "ramanujan", "--poly", "X^2 - Y", "--chi", "2"]);
    assert_eq!(
        json(&o)["value"],
        "3582561175670188183341398160062940594467075006348688961907619188736786432"
    );

    let dir = tempfile::tempdir().unwrap();
    let delta = write(dir.path(), "delta.json", r#"{"dim":2,"vertices":[[0,0],[2,0],[0,2]]}"#);
    let xi = write(dir.path(), "xi.json", r#"{"dim":2,"vertices":[[0,0]]}"#);
    let o = run(&["bound", "--theorem", "toric", "--delta-file", &delta, "--field-file", &xi, "--delta", "1", "--chi", "0"]);
    assert_eq!(json(&o)["value"], "8");

    let o = run(&["bound", "--theorem", "mixed", "--dz", "1"]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("dx, chi"), "{err}");
}

#[test]
fn help_names_symbols() {
    let o = run(&["bound", "--help"]);
    assert_eq!(o.status.code(), Some(0));
    let h = stdout(&o);
    for flag in ["-n", "--delta", "-d", "--dz", "--dx", "-q", "--chi", "-m", "-D"] {
        assert!(h.contains(flag), "{flag} missing from help");
    }
}

#[test]
fn polytope_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let square = write(dir.path(), "sq.json", r#"{"dim":2,"vertices":[[0,0],[2,0],[0,2],[2,2]]}"#);
    let tri = write(dir.path(), "tri.json", r#"{"dim":2,"vertices":[[0,0],[1,0],[0,1]]}"#);
    let pts = write(dir.path(), "pts.json", r#"{"dim":2,"vertices":[[0,0],[1,0],[0,1],["1/4","1/4"]]}"#);

    assert_eq!(json(&run(&["polytope", "ivol", "--body", &square]))["ivol"], "9");
    assert_eq!(json(&run(&["polytope", "volume", "--body", &square]))["volume"], "4");
    let mv = run(&["polytope", "mixed-volume", "--bodies", &square, &tri]);
    assert_eq!(json(&mv)["mixed_volume"], "2");
    let h = json(&run(&["polytope", "hull", "--body", &pts]));
    assert_eq!(h["vertices"].as_array().unwrap().len(), 3);
    assert!(h["facets"].is_array());
    assert_eq!(json(&run(&["polytope", "quermass", "--body", &square, "-j", "2"]))["quermassintegral"], "1/2");
    let t = json(&run(&["polytope", "truncate", "--body", &square, "-d", "1"]));
    assert_eq!(t["volume"], "1");

    let o = run(&["polytope", "ivol", "--body", &square, "--max-box", "4"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["polytope", "ivol", "--body", &square, "--max-dim", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--suite", "bk", "--seed", "7", "--trials", "8"];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0));
    let lines: Vec<&str> = std::str::from_utf8(&a.stdout).unwrap().lines().collect();
    assert_eq!(lines.len(), 9);
    let summary: Value = serde_json::from_str(lines[8]).unwrap();
    assert_eq!(summary["failed"], 0);
    let b = run(&[&args[..], &["--sequential"]].concat());
    assert_eq!(a.stdout, b.stdout);

    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(3));
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(run(&["example", "nope"]).status.code(), Some(3));
    assert_eq!(run(&["mult", "--poly", "y"]).status.code(), Some(3));
}
