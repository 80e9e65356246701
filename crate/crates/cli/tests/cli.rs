// SPDX-License-Identifier: Apache-2.0

use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphcodes"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn construct_dualbch_reports_nominal_dimension() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &["construct", "--family", "dualbch", "--t", "5", "--d", "3", "--out", "o"],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let d = json(&dir.path().join("o/dualbch.json"));
    assert_eq!(d["nominal_dimension"], 5);
    assert_eq!(d["dimension"], 5);
    assert_eq!(d["n"], 32);
    assert_eq!(d["config"]["command"], "construct");
}

#[test]
fn construct_random_has_dimension_five() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &[
            "construct",
            "--family",
            "random",
            "--n",
            "14",
            "--delta",
            "0.5",
            "--seed",
            "3",
        ],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let d = json(&dir.path().join("random.json"));
    assert_eq!(d["dimension"], 5);
    assert!(d["claimed_distance"].as_u64().unwrap() > 7);
    assert!(!d["transcript"].as_array().unwrap().is_empty());
}

#[test]
fn exit_codes_and_single_line_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[(&[&str], i32, &str)] = &[
        (&["construct", "--family", "random", "--n", "14"], 2, "usage"),
        (&["construct"], 2, "usage"),
        (&["frobnicate"], 2, "usage"),
        (
            &["construct", "--family", "dualbch", "--t", "4", "--d", "9"],
            3,
            "precondition",
        ),
        (&["distance", "missing.json"], 3, "precondition"),
        (
            &[
                "construct",
                "--family",
                "random",
                "--n",
                "14",
                "--delta",
                "1/2",
                "--retries",
                "0",
            ],
            4,
            "budget",
        ),
    ];
    for (args, code, cat) in cases {
        let o = run(dir.path(), args);
        assert_eq!(o.status.code(), Some(*code), "{args:?}: {}", stderr(&o));
        let err = stderr(&o);
        assert_eq!(err.lines().count(), 1, "{err}");
        assert!(err.starts_with(&format!("error: {cat}: ")), "{err}");
    }
}

#[test]
fn distance_of_even_weight_stczd_is_two() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("even.gen"), "q=3 n=3 k=2\n1 0 1\n0 1 1\n").unwrap();
    let o = run(
        dir.path(),
        &[
            "construct",
            "--family",
            "stczd",
            "--generator",
            "even.gen",
            "--name",
            "even",
        ],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let o = run(dir.path(), &["distance", "even.json", "--out", "even.report.json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = json(&dir.path().join("even.report.json"));
    assert_eq!(r["report"]["lower"], 2);
    assert_eq!(r["report"]["upper"], 2);
    assert_eq!(r["codeword_index"], 1);
    assert_eq!(r["report"]["witness"]["rows"].as_array().unwrap().len(), 2);
    assert_eq!(r["singleton"], true);

    let o = run(
        dir.path(),
        &["distance", "even.json", "--mode", "sample", "--samples", "0"],
    );
    assert_eq!(o.status.code(), Some(3));
    let o = run(dir.path(), &["distance", "even.json", "--budget", "1"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn dualbch_t4_distance_matches_independence_numbers() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(
        dir.path(),
        &["construct", "--family", "dualbch", "--t", "4", "--d", "3"]
    )
    .status
    .success());
    let o = run(dir.path(), &["distance", "dualbch.json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let code = graphcodes::dualbch_basis(graphcodes::FieldContext::new(4).unwrap(), 3)
        .unwrap()
        .code;
    let expect = (1u64..16)
        .map(|m| 16 - graphcodes::independence_number(&code.graph_word(&[m]).unwrap()).unwrap())
        .min()
        .unwrap();
    assert_eq!(r["report"]["lower"], expect as u64);
    assert_eq!(r["report"]["codewords"], 15);
}

#[test]
fn export_warmup_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(dir.path(), &["construct", "--family", "warmup", "--t", "2"])
        .status
        .success());
    let o = run(
        dir.path(),
        &["export", "warmup.json", "--alpha", "2", "--format", "edges"],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().count(), 6);

    let o = run(dir.path(), &["export", "warmup.json", "--coeffs", "0"]);
    let m = graphcodes::MatrixWord::from_text(&stdout(&o)).unwrap();
    assert!(m.is_zero());
    assert_eq!(stdout(&o), m.to_text());

    let o = run(dir.path(), &["export", "warmup.json", "--index", "1"]);
    let m = graphcodes::MatrixWord::from_text(&stdout(&o)).unwrap();
    assert_eq!(m.to_text(), stdout(&o));
    assert_eq!(graphcodes::GraphWord::new(m).unwrap().edges().len(), 6);

    let o = run(dir.path(), &["export", "warmup.json", "--index", "2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn construct_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = [
        "construct",
        "--family",
        "opt",
        "--eps",
        "1/2",
        "--n",
        "10",
        "--k",
        "2",
        "--seed",
        "9",
    ];
    assert!(run(a.path(), &args).status.success());
    assert!(run(b.path(), &[&args[..], &["--threads", "1"]].concat())
        .status
        .success());
    for f in ["opt.json", "opt.basis"] {
        assert_eq!(
            std::fs::read(a.path().join(f)).unwrap(),
            std::fs::read(b.path().join(f)).unwrap()
        );
    }
    let ra = run(a.path(), &["distance", "opt.json"]);
    let rb = run(b.path(), &["--threads", "2", "distance", "opt.json"]);
    assert_eq!(ra.stdout, rb.stdout);
    let ea = run(a.path(), &["export", "opt.json", "--index", "3"]);
    let eb = run(b.path(), &["export", "opt.json", "--index", "3"]);
    assert_eq!(ea.stdout, eb.stdout);
}

#[test]
fn tables() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["table", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 1);
    let o = run(
        dir.path(),
        &[
            "table",
            "--row",
            "dualbch:t=4,d=3",
            "--row",
            "dualbch:t=5,d=3",
            "--row",
            "dualbch:t=6,d=3",
            "--csv",
            "t.csv",
        ],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = std::fs::read_to_string(dir.path().join("t.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    for r in rows {
        let cells: Vec<&str> = r.split(',').collect();
        assert_eq!(cells[8], "pass", "{r}");
        assert!(cells[5].parse::<usize>().is_ok());
    }
}

#[test]
fn weil_and_selftest() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["weil", "--t", "4", "--degrees", "3,5", "--format", "csv"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("t,degree,method"));
    assert!(out.lines().skip(1).all(|l| l.ends_with(",pass")));
    let o = run(dir.path(), &["selftest"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS ")));
}
