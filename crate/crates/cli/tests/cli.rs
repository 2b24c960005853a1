use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const K4: &str = "C~";
const PETERSEN: &str = "IOLM_```O";
const FRANKLIN: &str = "KCUAK@`GPg@Q";
const CUBE: &str = "Gr`HOk";

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_scaffoldkit"));
    c.env_remove("SCAFFOLDKIT_MAX_N");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap_or_else(|e| panic!("{e}: {l}")))
        .collect()
}

fn single(out: &Output) -> Value {
    let mut v = lines(out);
    assert_eq!(v.len(), 1, "{v:?}");
    v.remove(0)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn extended(graph6: &str) -> Value {
    let out = run(&["extend", graph6, "--index", "0"]);
    assert!(out.status.success());
    single(&out)
}

fn multiplicity_counts(ext: &Value) -> (usize, usize) {
    let edges = ext["scaffold"].as_array().unwrap();
    let ones = edges.iter().filter(|e| e["multiplicity"] == 1).count();
    (ones, edges.len() - ones)
}

#[test]
fn validate_skips_comments_and_flags_bad_lines() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.g6", &format!("# header\n{K4}\n\n{PETERSEN}\n"));
    let out = run(&["validate", &good]);
    assert!(out.status.success());
    let recs = lines(&out);
    assert_eq!(recs.len(), 2);
    assert!(recs.iter().all(|r| r["ok"] == true && r["three_connected"] == true));
    assert_eq!(recs[0]["line"], 2);

    let bad = write(dir.path(), "bad.g6", &format!("{K4}\nA_\n!!\n"));
    let out = run(&["validate", &bad]);
    assert_eq!(out.status.code(), Some(1));
    let recs = lines(&out);
    assert_eq!(recs.len(), 3);
    assert_eq!(recs[1]["ok"], false);
    assert!(!recs[1]["violations"].as_array().unwrap().is_empty());
    assert!(recs[2]["error"].is_string());
}

#[test]
fn validate_empty_corpus_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.g6", "");
    let out = run(&["validate", &empty]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
}

#[test]
fn missing_file_is_an_input_error() {
    let out = run(&["validate", "/nonexistent/corpus.g6"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(single(&out)["error"], "invalid-input");
}

#[test]
fn enumerate_reports_census() {
    let v = single(&run(&["enumerate", K4]));
    assert_eq!(v["systems"].as_array().unwrap().len(), 1);
    assert_eq!(v["genus_histogram"]["0"], 1);
    let v = single(&run(&["enumerate", PETERSEN]));
    assert_eq!(v["systems"].as_array().unwrap().len(), 1);
    assert_eq!(v["genus_histogram"]["1"], 1);
}

#[test]
fn max_n_guard_and_env_override() {
    let out = run(&["--max-n", "8", "enumerate", PETERSEN]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(single(&out)["error"], "invalid-input");

    let out = bin().env("SCAFFOLDKIT_MAX_N", "10").args(["--max-n", "8", "enumerate", PETERSEN]).output().unwrap();
    assert!(out.status.success());

    let out = bin().env("SCAFFOLDKIT_MAX_N", "8").args(["--max-n", "10", "enumerate", PETERSEN]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn non_cubic_graph_is_rejected() {
    let out = run(&["enumerate", "D~{"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(single(&out)["error"], "invalid-input");
}

#[test]
fn extend_known_scaffolds() {
    assert_eq!(multiplicity_counts(&extended(K4)), (0, 0));
    assert_eq!(multiplicity_counts(&extended(PETERSEN)), (30, 0));
    assert_eq!(multiplicity_counts(&extended(FRANKLIN)), (12, 12));
}

#[test]
fn extend_accepts_system_file_and_rejects_bad_ones() {
    let dir = tempfile::tempdir().unwrap();
    let census = single(&run(&["enumerate", CUBE]));
    let system = census["systems"][0].to_string();
    let path = write(dir.path(), "sys.json", &system);
    let out = run(&["extend", CUBE, "--system", &path]);
    assert!(out.status.success());
    assert_eq!(single(&out)["graph6"], CUBE);

    let mut broken = census["systems"][0].clone();
    broken["faces"].as_array_mut().unwrap().pop();
    let path = write(dir.path(), "broken.json", &broken.to_string());
    let out = run(&["extend", CUBE, "--system", &path]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["extend", CUBE, "--index", "99"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reconstruct_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "pet.json", &extended(PETERSEN).to_string());
    let out = run(&["reconstruct", &path]);
    assert!(out.status.success());
    let v = single(&out);
    for key in ["faces", "branch_count", "completions", "rules", "special"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["special"], "petersen");
    assert_eq!(v["faces"].as_array().unwrap().len(), 6);
}

#[test]
fn reconstruct_reads_stdin() {
    use std::io::Write;
    use std::process::Stdio;
    let text = extended(K4).to_string();
    let mut child = bin().args(["reconstruct", "-"]).stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert_eq!(single(&out)["faces"].as_array().unwrap().len(), 4);
}

#[test]
fn reconstruct_rejects_invalid_scaffold() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "cube.json", &format!(r#"{{"graph6":"{CUBE}","scaffold":[]}}"#));
    let out = run(&["reconstruct", &path]);
    assert_eq!(out.status.code(), Some(1));
    let v = single(&out);
    assert!(v["error"].is_string() && v["error"] != "invalid-input");
}

#[test]
fn verify_bijection_small_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write(dir.path(), "small.g6", &format!("{K4}\n{CUBE}\n{PETERSEN}\n"));
    let seed = write(dir.path(), "seed.g6", &format!("{FRANKLIN}\n"));
    let out = run(&["verify-bijection", &corpus, "--seed-corpus", &seed]);
    assert!(out.status.success());
    let recs = lines(&out);
    assert_eq!(recs.len(), 5);
    let summary = recs.last().unwrap();
    assert_eq!(summary["summary"], true);
    assert_eq!(summary["ok"], true);
    assert_eq!(summary["aggregate"]["graphs"], 4);
    assert_eq!(recs[3]["corpus"], seed.as_str());
    assert!(recs[..4].iter().all(|r| r["roundtrip_ok"] == true));
}

#[test]
fn verify_bijection_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write(dir.path(), "small.g6", &format!("{K4}\n{CUBE}\n{PETERSEN}\n{FRANKLIN}\n"));
    let strip = |out: Output| {
        let mut v = lines(&out);
        v.last_mut().unwrap().as_object_mut().unwrap().remove("wall_time_ms");
        v
    };
    let a = strip(run(&["verify-bijection", &corpus, "--jobs", "1"]));
    let b = strip(run(&["verify-bijection", &corpus, "--jobs", "2"]));
    assert_eq!(a, b);
}

#[test]
fn verify_extended_flags_corrupted_line() {
    let dir = tempfile::tempdir().unwrap();
    let good = extended(PETERSEN);
    let mut bad = extended(FRANKLIN);
    bad["scaffold"].as_array_mut().unwrap().remove(0);
    let path = write(dir.path(), "ext.jsonl", &format!("{good}\n{bad}\n"));
    let out = run(&["verify-bijection", &path, "--extended"]);
    assert_eq!(out.status.code(), Some(1));
    let recs = lines(&out);
    assert_eq!(recs.len(), 3);
    assert_eq!(recs[0]["ok"], true);
    assert_eq!(recs[1]["ok"], false);
    assert!(recs[1]["error"].is_string());
    assert_eq!(recs[2]["failures"], 1);
}

#[test]
fn detect_reports_patterns() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "pet.json", &extended(PETERSEN).to_string());
    let v = single(&run(&["detect", &path]));
    assert_eq!(v["special"], "petersen");
    assert!(!v["forks"].as_array().unwrap().is_empty());
    assert!(v["butterflies"].as_array().unwrap().iter().any(|b| b["kind"] == "B1"));
    assert!(!v["unresolved_forks"].as_array().unwrap().is_empty());

    let path = write(dir.path(), "k4.json", &extended(K4).to_string());
    let v = single(&run(&["detect", &path]));
    assert_eq!(v["special"], "none");
    assert!(v["forks"].as_array().unwrap().is_empty());
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("census.json");
    let out = run(&["--out", target.to_str().unwrap(), "enumerate", K4]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(fs::read_to_string(&target).unwrap().trim()).unwrap();
    assert_eq!(v["graph6"], K4);
}
