use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_domkernel"))
        .args(args)
        .current_dir(dir)
        .env_remove("DOMKERNEL_ORACLE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

const HUBS5: &str = "p 7 10\ne 0 2\ne 0 3\ne 0 4\ne 0 5\ne 0 6\ne 1 2\ne 1 3\ne 1 4\ne 1 5\ne 1 6\n";

#[test]
fn solve_prints_json() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("c5.txt"), "p 5 5\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 0 4\n").unwrap();
    for mode in ["brute", "bnb"] {
        let out = stdout(&run(
            &["solve", "--variant", "ktuple:2", "--mode", mode, "c5.txt"],
            dir.path(),
        ));
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["cardinality"], 4);
        assert_eq!(v["feasible"], true);
        assert_eq!(v["set"].as_array().unwrap().len(), 4);
        assert!(v["nodes_explored"].as_u64().unwrap() > 0);
        assert!(v["wall_time"].is_number());
    }
    let out = stdout(&run(
        &["solve", "--variant", "liars", "--mode", "bnb", "c5.txt"],
        dir.path(),
    ));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["feasible"].as_bool().unwrap());
}

#[test]
fn solve_reports_infeasible() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("k2.txt"), "p 2 1\ne 0 1\n").unwrap();
    let out = stdout(&run(
        &["solve", "--variant", "liars", "--mode", "brute", "k2.txt"],
        dir.path(),
    ));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["feasible"], false);
    assert_eq!(v["cardinality"], Value::Null);
}

#[test]
fn kernelize_prints_reduced_graph_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("hubs.txt"), HUBS5).unwrap();
    let out = stdout(&run(&["kernelize", "hubs.txt", "--trace", "t.json"], dir.path()));
    assert_eq!(out, "p 7 2\nd 3\nd 4\nd 5\nd 6\ne 0 2\ne 1 2\n");
    let trace: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("t.json")).unwrap()).unwrap();
    assert_eq!(trace["steps"].as_array().unwrap().len(), 1);
    assert_eq!(trace["steps"][0]["kept_witness"], 2);
    assert_eq!(trace["reduced_n"], 3);
}

#[test]
fn gen_then_regions() {
    let dir = tempfile::tempdir().unwrap();
    stdout(&run(
        &["gen", "--family", "wheel", "--size", "5", "-o", "w.txt"],
        dir.path(),
    ));
    let out = stdout(&run(
        &["regions", "w.txt", "--dset", "auto", "--regime", "liars"],
        dir.path(),
    ));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["counts"]["covered"], 6);
    assert_eq!(v["validation"].as_array().unwrap().len(), 0);
    assert_eq!(v["bounds_report"]["violations"].as_array().unwrap().len(), 0);
    for r in v["regions"].as_array().unwrap() {
        assert!(r["u"].is_number() && r["boundary"].is_array() && r["interior"].is_array());
    }

    let out = stdout(&run(&["regions", "w.txt", "--dset", "0,1,3", "--dot"], dir.path()));
    assert!(out.starts_with("graph induced {"));
    assert!(out.contains(" -- "));

    // {0, 1} does not double dominate the rim vertex 3
    let bad = run(&["regions", "w.txt", "--dset", "0,1"], dir.path());
    assert!(!bad.status.success());
}

#[test]
fn gadget_outputs_graph_and_metadata() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("k3.txt"), "p 3 3\ne 0 1\ne 0 2\ne 1 2\n").unwrap();
    let out = stdout(&run(
        &[
            "gadget", "--kind", "ktuple:3", "--param", "1", "k3.txt", "--verify", "12",
        ],
        dir.path(),
    ));
    let meta_line = out.lines().last().unwrap();
    let meta: Value = serde_json::from_str(meta_line.strip_prefix("c ").unwrap()).unwrap();
    assert_eq!(meta["parameter_out"], 4);
    assert_eq!(meta["transformed_n"], 6);
    assert_eq!(meta["verification"]["gamma_out"], 4);
    assert!(out.starts_with("p 6 12\n"));

    stdout(&run(
        &["gen", "--family", "cycle", "--size", "4", "-o", "c4.txt"],
        dir.path(),
    ));
    let out = stdout(&run(
        &["gadget", "--kind", "planar-liars", "--param", "2", "c4.txt"],
        dir.path(),
    ));
    assert!(
        out.lines().any(|l| l.starts_with("r ")),
        "embedding expected for embedded input"
    );
    let meta: Value = serde_json::from_str(out.lines().last().unwrap().strip_prefix("c ").unwrap()).unwrap();
    assert_eq!(meta["parameter_out"], 14);
}

#[test]
fn bench_writes_report_csv_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = r#"{
        "kernel": [{"family": "hubs", "t": 4}, {"family": "stacked", "n": 8, "seed": 1}],
        "region": [{"family": "grid", "rows": 2, "cols": 3}],
        "gadget": [{"kind": "liars", "graph": {"family": "path", "n": 3}}]
    }"#;
    fs::write(dir.path().join("corpus.json"), corpus).unwrap();
    let o = run(
        &[
            "bench",
            "--suite",
            "all",
            "--corpus",
            "corpus.json",
            "--out",
            "r.json",
            "--csv",
            "--dot",
            "dots",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(report["summary"]["records"], 4);
    assert!(fs::read_to_string(dir.path().join("r.csv")).unwrap().lines().count() == 5);
    assert!(fs::read_dir(dir.path().join("dots")).unwrap().count() >= 3);
}

#[test]
fn bench_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("bad.json"),
        r#"{"kernel": [{"family": "stacked", "n": 5, "seed": 3}]}"#,
    )
    .unwrap();
    let o = run(
        &["bench", "--suite", "kernel", "--corpus", "bad.json", "--out", "r.json"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2));

    fs::write(dir.path().join("broken.json"), "{not json").unwrap();
    let o = run(
        &[
            "bench",
            "--suite",
            "kernel",
            "--corpus",
            "broken.json",
            "--out",
            "r.json",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(3));

    fs::write(
        dir.path().join("err.json"),
        r#"{"kernel": [{"family": "stacked", "n": 2, "seed": 0}]}"#,
    )
    .unwrap();
    let o = run(
        &["bench", "--suite", "kernel", "--corpus", "err.json", "--out", "r.json"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn oracle_cap_env_is_honoured() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("c.json"),
        r#"{"kernel": [{"family": "stacked", "n": 12, "seed": 4}]}"#,
    )
    .unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_domkernel"))
        .args(["bench", "--suite", "kernel", "--corpus", "c.json", "--out", "r.json"])
        .current_dir(dir.path())
        .env("DOMKERNEL_ORACLE_CAP", "double=0,liars=0,nodes=1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(report["summary"]["skipped"], 1);
    assert_eq!(report["caps"]["node_limit"], 1);

    let o = Command::new(env!("CARGO_BIN_EXE_domkernel"))
        .args(["bench", "--suite", "kernel", "--corpus", "c.json", "--out", "r.json"])
        .current_dir(dir.path())
        .env("DOMKERNEL_ORACLE_CAP", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}
