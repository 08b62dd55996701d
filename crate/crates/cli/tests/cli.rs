//! End-to-end runs of the `graphmod` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn graphmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphmod")).args(args).output().expect("binary runs")
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).expect("json line")).collect()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.display().to_string()
}

#[test]
fn fixtures_report_figure_costs() {
    let out = graphmod(&["fixtures"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    let costs: Vec<u64> = recs.iter().map(|r| r["cost"].as_u64().unwrap()).collect();
    assert_eq!(costs, [3, 1, 4, 3]);
    assert!(recs.iter().all(|r| r["valid"] == true && r["schema_version"] == 1));
    assert_eq!(recs[3]["lp_value"], "5/2");
}

#[test]
fn hcd_on_triangle_with_pendant() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "g.txt", "1 2\n2 3\n1 3\n3 4\n");
    let out = graphmod(&["hcd", &f]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(records(&out)[0]["cost"], 1);

    let out = graphmod(&["hcd", &f, "--k", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(records(&out)[0]["status"], "infeasible");
}

#[test]
fn self_loop_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "g.txt", "1 2\n2 2\n");
    let out = graphmod(&["ce", &f]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2") && err.contains("self-loop"), "{err}");
}

#[test]
fn missing_file_is_an_input_error() {
    let out = graphmod(&["hcd", "/nonexistent/graph.txt"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fast_ls_rejects_an_empty_seed_on_a_cyclic_tournament() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "t.tour", "3\n1 2\n2 3\n3 1\n");
    let out = graphmod(&["fast-ls", &f, "--k", "3", "--seed-solution", "empty"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(records(&out)[0]["status"], "invalid_input");

    let out = graphmod(&["fast-ls", &f, "--exact"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(records(&out)[0]["cost"], 1);
}

#[test]
fn vc_ls_from_explicit_cover() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "g.txt", "1 2\n2 3\n1 3\n3 4\n");
    let out = graphmod(&["vc-ls", &f, "--k", "2", "--cover", "1,2,3"]);
    assert_eq!(out.status.code(), Some(0));
    let rec = &records(&out)[0];
    assert_eq!((rec["seed_cost"].as_u64(), rec["cost"].as_u64()), (Some(3), Some(2)));

    let out = graphmod(&["vc-ls", &f, "--k", "2", "--cover", "1,9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_on_empty_directory_prints_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = graphmod(&["bench", dir.path().to_str().unwrap(), "--problem", "ce", "--solver", "exact"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}

#[test]
fn bench_keeps_going_past_bad_files() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "a.txt", "1 2\n2 3\n");
    write(dir.path(), "b.txt", "1 x\n");
    let out = graphmod(&["bench", dir.path().to_str().unwrap(), "--problem", "ce", "--solver", "exact"]);
    let recs = records(&out);
    assert_eq!(recs.len(), 2);
    assert_eq!(recs[0]["status"], "ok");
    assert_eq!(recs[1]["status"], "invalid_input");
}

#[test]
fn tune_is_byte_identical_across_runs() {
    let args = ["tune", "--random", "4", "--n", "6", "--seed", "9"];
    let a = graphmod(&args);
    let b = graphmod(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let report: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report["configs"].as_array().unwrap().len(), 24);
    assert_eq!(report["answers_agree"], true);
}

#[test]
fn oracle_agrees_with_solver() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "g.txt", "1 2\n2 3\n3 4\n4 1\n1 3\n");
    let solved = records(&graphmod(&["ce", &f]))[0]["cost"].as_u64().unwrap();
    let out = graphmod(&["oracle", "ce", &f]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(records(&out)[0]["value"], solved.to_string());
}
