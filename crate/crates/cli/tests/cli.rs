use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(rel)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sigma-lab")).args(args).env_remove("SIGMA_LAB_SEED").output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path(rel: &str) -> String {
    data(rel).to_string_lossy().into_owned()
}

#[test]
fn two_coin_algebra_is_valid() {
    let out = run(&["--json", "validate", &path("algebras/two_coin.alg")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["valid"], true);
    assert_eq!(v["complements"]["F1"], "F2");
    assert_eq!(v["projection_products"], true);
}

#[test]
fn pentagon_algebra_fails_distributivity_with_witness() {
    let out = run(&["--json", "validate", &path("algebras/pentagon.alg")]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["valid"], false);
    assert_eq!(v["axiom"], "distributive");
    let mut witness: Vec<&str> = v["witness"].as_array().unwrap().iter().map(|w| w.as_str().unwrap()).collect();
    witness.sort();
    assert_eq!(witness, ["u", "v", "w"]);
}

#[test]
fn dependent_algebra_fails_independence() {
    let out = run(&["--json", "validate", &path("algebras/dependent.alg")]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["axiom"], "disjoint_independent");
}

#[test]
fn malformed_and_missing_files_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.alg");
    std::fs::write(&bad, "space = [1/2, 1/2]\nalgebra = {0, nope, 1}\n").unwrap();
    let out = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    let out = run(&["validate", dir.path().join("absent.alg").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn every_shipped_scenario_passes() {
    for entry in std::fs::read_dir(data("scenarios")).unwrap() {
        let p = entry.unwrap().path();
        let out = run(&["-q", "run", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", p.display());
    }
}

#[test]
fn join_pathology_reports_a_trajectory() {
    let out = run(&["--json", "run", &path("scenarios/join_pathology.scn")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["scenario"], "join-pathology");
    let t = &v["trajectories"][0];
    assert_eq!(t["name"], "distance_to_bottom");
    let values: Vec<f64> = t["values"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    assert_eq!(values.len(), 6);
    assert!(values.windows(2).all(|w| w[0] > w[1]));
    assert_eq!(*values.last().unwrap(), 0.0);
}

#[test]
fn unknown_scenario_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("foo.scn");
    std::fs::write(&f, "scenario = foo\n").unwrap();
    assert_eq!(run(&["run", f.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn bad_usage_exits_2() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["suite", "--max-atoms", "x"]).status.code(), Some(2));
}

#[test]
fn suite_is_deterministic_and_passes() {
    let a = run(&["--json", "suite", "--max-atoms", "4"]);
    let b = run(&["--json", "suite", "--max-atoms", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["seed"], 42);
    assert!(!v["properties"].as_array().unwrap().is_empty());
}

#[test]
fn suite_with_default_bounds_passes() {
    let out = run(&["-q", "suite"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn suite_with_no_atoms_is_empty() {
    let out = run(&["--json", "suite", "--max-atoms", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["properties"].as_array().unwrap().len(), 0);
}

#[test]
fn seed_env_and_flag() {
    let base = run(&["--json", "suite", "--max-atoms", "3"]).stdout;
    let with_env = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_sigma-lab"))
            .args(["--json", "suite", "--max-atoms", "3"])
            .env("SIGMA_LAB_SEED", seed)
            .output()
            .unwrap()
    };
    assert_eq!(with_env("42").stdout, base);
    let seven = with_env("7");
    assert_eq!(json(&seven)["seed"], 7);
    assert_eq!(run(&["--json", "--seed", "7", "suite", "--max-atoms", "3"]).stdout, seven.stdout);
    assert_eq!(with_env("seven").status.code(), Some(2));
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.json");
    let out = run(&["--json", "--out", out_path.to_str().unwrap(), "run", &path("scenarios/pentagon_uniform.scn")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(&out_path).unwrap(), out.stdout);
}

#[test]
fn table_output_and_list() {
    let out = run(&["validate", &path("algebras/pentagon.alg")]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("noise-type FAIL"));
    assert!(text.contains("INVALID"));
    let list = run(&["--json", "list"]);
    assert_eq!(list.status.code(), Some(0));
    let names: Vec<String> =
        json(&list).as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap().to_string()).collect();
    assert!(names.iter().any(|n| n == "join-pathology"));
    assert!(names.iter().any(|n| n == "coin-noise"));
}
