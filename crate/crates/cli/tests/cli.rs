use std::path::Path;
use std::process::{Command, Output};

fn ivdr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ivdr"))
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn running_example_matches_golden_report() {
    let o = ivdr(&["--json", "check", "examples/running_example.ivdl"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), golden("running_example.json"));
}

#[test]
fn mutated_example_fails_with_golden_counterexample() {
    let o = ivdr(&["--json", "check", "examples/mutated_example.ivdl"]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o), golden("mutated_example.json"));
    let again = ivdr(&["--json", "--jobs", "2", "check", "examples/mutated_example.ivdl"]);
    assert_eq!(stdout(&again), stdout(&o));
}

#[test]
fn text_report_names_every_obligation() {
    let o = ivdr(&["check", "examples/running_example.ivdl", "--horizon", "2"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    for label in [
        "main-simulation",
        "initialisation",
        "finalisation",
        "concrete-establishes-relation",
        "relation-implies-abstract",
        "flag-process",
        "guard-process",
    ] {
        assert!(text.contains(&format!("PASS    {label} ")), "{text}");
    }
}

#[test]
fn timings_are_opt_in() {
    let o = ivdr(&["--json", "--timings", "--horizon", "1", "check", "examples/mutated_example.ivdl"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["directives"][0]["runtime_ms"].is_u64());
}

#[test]
fn budget_refusal_exits_3() {
    let o = ivdr(&["--json", "--budget", "10", "check", "examples/mutated_example.ivdl"]);
    assert_eq!(code(&o), 3);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["directives"][0]["verdict"], "refused");
    assert!(v["directives"][0]["error"].as_str().unwrap().contains("budget"));
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.ivdl");
    std::fs::write(&empty, "").unwrap();
    let o = ivdr(&["check", empty.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("expected `carrier`"));

    let dup = dir.path().join("dup.ivdl");
    std::fs::write(&dup, "carrier 2 closed\nuniverse U { var x : bool var x : bool }\n").unwrap();
    let o = ivdr(&["check", dup.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr).to_string();
    assert!(err.contains("2:18") && err.contains("2:31"), "{err}");

    assert_eq!(code(&ivdr(&["check", "examples/no_such_file.ivdl"])), 2);
}

#[test]
fn laws_subcommand() {
    let o = ivdr(&["laws", "--law", "seq-comp-no-joins"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("clause"), "witness printed");
    let o = ivdr(&["--json", "laws", "--law", "chop-assoc", "--instances", "50", "--depth", "1"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["laws"][0]["status"], "pass");
    assert_eq!(v["laws"][0]["tried"], 50);
    assert_eq!(code(&ivdr(&["laws", "--law", "no-such"])), 2);
}

#[test]
fn eval_on_the_apparent_state_example() {
    let run = |pred: &str, iv: &str| {
        let o = ivdr(&[
            "eval",
            "examples/apparent_states.ivdl",
            "--pred",
            pred,
            "--interval",
            iv,
            "--stream",
            "u=0,v=0;u=1,v=0;u=1,v=1",
        ]);
        assert_eq!(code(&o), 0);
        stdout(&o).trim_end().to_string()
    };
    assert!(run("PossiblyLess", "0..2").ends_with(": true"));
    assert!(run("SometimeLess", "0..2").ends_with(": false"));
    assert!(run("AlwaysLess", "empty").ends_with(": true"));
    assert!(run("PossiblySelf", "0..2").ends_with(": true"));
}

#[test]
fn eval_trace_and_errors() {
    let o = ivdr(&[
        "eval",
        "examples/running_example.ivdl",
        "--pred",
        "Abs.ap",
        "--interval",
        "0..2",
        "--stream",
        "100",
        "--trace",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("split [0,1] | [2,2]"), "{}", stdout(&o));
    let missing = ivdr(&[
        "eval",
        "examples/apparent_states.ivdl",
        "--pred",
        "Nope",
        "--interval",
        "0..1",
        "--stream",
        "0",
    ]);
    assert_eq!(code(&missing), 2);
    let outside = ivdr(&[
        "eval",
        "examples/apparent_states.ivdl",
        "--pred",
        "AlwaysLess",
        "--interval",
        "0..7",
        "--stream",
        "0",
    ]);
    assert_eq!(code(&outside), 2);
}
