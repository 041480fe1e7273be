use std::path::PathBuf;
use std::process::{Command, Output};

use rivercross::{McParams, SolutionPath};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rivercross"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--format", "json", "--deterministic"];
    full.extend_from_slice(args);
    let out = run(&full);
    (
        serde_json::from_str(&stdout(&out)).expect("valid JSON"),
        out.status.code().unwrap(),
    )
}

/// Compares stdout with `tests/golden/<name>.txt`; `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, args: &[&str], code: i32) {
    let out = run(args);
    assert_eq!(out.status.code(), Some(code), "exit status of {args:?}");
    let path: PathBuf = [
        env!("CARGO_MANIFEST_DIR"),
        "tests",
        "golden",
        &format!("{name}.txt"),
    ]
    .iter()
    .collect();
    let got = stdout(&out);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &got).unwrap();
    }
    let want = std::fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(
        got,
        want,
        "output of {args:?} differs from {}",
        path.display()
    );
}

#[test]
fn golden_outputs() {
    golden(
        "solve_3_3_2_0_all",
        &["solve", "3", "3", "2", "0", "--all"],
        0,
    );
    golden("solve_4_4_2_0", &["solve", "4", "4", "2", "0"], 2);
    golden(
        "solve_1_1_2_0_json",
        &[
            "--format",
            "json",
            "--deterministic",
            "solve",
            "1",
            "1",
            "2",
            "0",
        ],
        0,
    );
    golden(
        "spell_3_3_2_0_index_3",
        &["spell", "3", "3", "2", "0", "--index", "3"],
        0,
    );
    golden("count_3_3_2_0", &["count", "3", "3", "2", "0"], 0);
    golden(
        "count_7_7_4_0_graph",
        &["count", "7", "7", "4", "0", "--method", "graph"],
        0,
    );
    golden("count_4_4_2_0", &["count", "4", "4", "2", "0"], 2);
    golden("trace_3_3_2_0", &["trace", "3", "3", "2", "0"], 0);
    golden(
        "trace_3_3_2_0_steps_0",
        &["trace", "3", "3", "2", "0", "--steps", "0"],
        0,
    );
    golden("trace_4_4_2_0", &["trace", "4", "4", "2", "0"], 2);
    golden("sequence_5_3_1_8", &["sequence", "5", "3", "1", "8"], 0);
    golden(
        "conjecture_5_3_1_12",
        &["conjecture", "5", "3", "1", "12"],
        0,
    );
    golden(
        "conjecture_0_4_0_12",
        &["conjecture", "0", "4", "0", "12"],
        0,
    );
    golden(
        "conjecture_9_2_0_20_from_0",
        &["conjecture", "9", "2", "0", "20", "--from", "0"],
        0,
    );
    golden("strategy_8_3_2_1", &["strategy", "8", "3", "2", "1"], 0);
    golden(
        "strategy_3_2_3_0_big_boat_2",
        &["strategy", "3", "2", "3", "0", "--name", "big-boat-2"],
        0,
    );
    golden(
        "strategy_7_7_4_0_equal",
        &[
            "strategy",
            "7",
            "7",
            "4",
            "0",
            "--name",
            "zero-margin-equal-big-boat",
        ],
        0,
    );
}

#[test]
fn usage_errors_exit_with_one() {
    for args in [
        vec!["solve", "3", "4", "2", "0"],
        vec!["solve", "3", "3"],
        vec!["solve", "x", "3", "2", "0"],
        vec!["spell", "3", "3", "2", "0", "--index", "4"],
        vec!["count", "3", "3", "2", "0", "--method", "abacus"],
        vec!["sequence", "0", "2", "1", "5"],
        vec!["strategy", "3", "3", "2", "0", "--name", "bogus"],
        vec!["frobnicate"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?} explains itself");
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn methods_agree() {
    for m in 1..=5 {
        for c in 1..=m {
            for (b, d) in [(2, 0), (3, 0), (3, 1), (4, 1)] {
                if McParams::new(m, c, b, d).is_err() {
                    continue;
                }
                let inst = [m.to_string(), c.to_string(), b.to_string(), d.to_string()];
                let results: Vec<(Value, Value, i32)> = ["graph", "matrix", "transfer"]
                    .iter()
                    .map(|method| {
                        let mut args: Vec<&str> = vec!["count"];
                        args.extend(inst.iter().map(String::as_str));
                        args.extend(["--method", method]);
                        let (v, code) = json(&args);
                        (
                            v["result"]["crossings"].clone(),
                            v["result"]["count"].clone(),
                            code,
                        )
                    })
                    .collect();
                assert!(
                    results.windows(2).all(|w| w[0] == w[1]),
                    "{inst:?}: {results:?}"
                );
            }
        }
    }
}

#[test]
fn json_round_trips() {
    let (v, code) = json(&["solve", "3", "3", "2", "0", "--all"]);
    assert_eq!(code, 0);
    assert_eq!(v["tool"], "rivercross");
    assert_eq!(v["command"], "solve");
    assert!(v.get("elapsed_ms").is_none());
    let text = serde_json::to_string_pretty(&v).unwrap();
    assert_eq!(serde_json::from_str::<Value>(&text).unwrap(), v);

    let params: McParams = serde_json::from_value(v["result"]["params"].clone()).unwrap();
    assert_eq!(params, McParams::new(3, 3, 2, 0).unwrap());
    let sols: Vec<SolutionPath> = serde_json::from_value(v["result"]["solutions"].clone()).unwrap();
    assert_eq!(sols.len(), 4);
    assert_eq!(v["result"]["count"], "4");
    for s in &sols {
        assert_eq!(s.validate(&params), Ok(()));
    }
    assert_eq!(
        serde_json::to_value(&sols).unwrap(),
        v["result"]["solutions"]
    );
}

#[test]
fn timing_is_reported_unless_deterministic() {
    let out = run(&["--format", "json", "count", "3", "3", "2", "0"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["elapsed_ms"].is_number());
}

#[test]
fn repeated_runs_are_identical() {
    for args in [
        vec![
            "--format",
            "json",
            "--deterministic",
            "conjecture",
            "5",
            "3",
            "1",
            "12",
        ],
        vec![
            "--format",
            "json",
            "--deterministic",
            "trace",
            "3",
            "3",
            "2",
            "0",
        ],
        vec!["solve", "5", "5", "3", "0", "--all"],
    ] {
        assert_eq!(run(&args).stdout, run(&args).stdout, "{args:?}");
    }
}

#[test]
fn conjecture_json_carries_the_generating_function() {
    let (v, _) = json(&["conjecture", "9", "2", "0", "20", "--from", "0"]);
    let gf = &v["result"]["gf"];
    assert_eq!(
        gf["denominator"],
        serde_json::json!(["1", "-39", "337", "-384", "4"])
    );
    assert_eq!(v["result"]["recurrence"]["recurrent_from"], 4);
    assert_eq!(v["result"]["verified"], true);
}

#[test]
fn thread_cap_is_honoured_and_checked() {
    let bin = env!("CARGO_BIN_EXE_rivercross");
    let capped = Command::new(bin)
        .args(["sequence", "5", "3", "1", "8"])
        .env("RIVER_SOLVE_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(0));
    assert_eq!(
        stdout(&capped),
        stdout(&run(&["sequence", "5", "3", "1", "8"]))
    );
    let bad = Command::new(bin)
        .args(["sequence", "5", "3", "1", "8"])
        .env("RIVER_SOLVE_THREADS", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}
