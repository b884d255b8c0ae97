use std::process::{Command, Output};

use cycloforge::SumOfRoots;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cycloforge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = run(&full);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn conductor_of_weight_five_sum() {
    let o = run(&["conductor", "1/8,7/8,1/7,2/7,4/7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("conductor 56"));
    assert!(text.contains("index 6"));

    let v = json(&["conductor", "1/8,7/8,1/7,2/7,4/7"]);
    assert_eq!(v["conductor"], 56);
    assert_eq!(v["index"], 6);
    assert_eq!(v["degree"], 4);
    let elems: Vec<u64> = serde_json::from_value(v["stabilizer_elements"].clone()).unwrap();
    assert!(elems.contains(&9) && elems.contains(&15));
}

#[test]
fn stabilizer_and_index() {
    let v = json(&["stabilizer", "1/5, 4/5", "--modulus", "10"]);
    assert_eq!(v["modulus"], 5);
    assert_eq!(v["order"], 2);
    let v = json(&["index", "5/12, 9/20, 1/20"]);
    assert_eq!(v["index"], 4);
    assert_eq!(v["conductor"], 60);
}

#[test]
fn weight_four_has_no_classes() {
    let o = run(&["mvs-enum", "--weight", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("0 classes"));
}

#[test]
fn atlas_file_round_trips() {
    let dir = std::env::temp_dir().join(format!("cycloforge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("w6.json");
    let o = run(&["mvs-enum", "--weight", "6", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["weight"], 6);
    assert_eq!(v["complete"], true);
    assert_eq!(v["entries"].as_array().unwrap().len(), 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn mvs_check_reports_canonical_form() {
    let v = json(&["mvs-check", "1/3, 2/3, 0/1"]);
    assert_eq!(v["vanishing"], true);
    assert_eq!(v["minimal"], true);
    let v = json(&["mvs-check", "1/2, 0/1, 1/3, 2/3, 0/1"]);
    assert_eq!(v["vanishing"], true);
    assert_eq!(v["minimal"], false);
    assert!(v["canonical"].is_null());
}

#[test]
fn printed_sums_reparse_to_equal_values() {
    let v = json(&["length", "5/12, 9/20, 1/20", "--max-weight", "3"]);
    assert_eq!(v["lower"], 3);
    assert_eq!(v["upper"], 3);
    assert_eq!(v["certified"], true);
    let w: SumOfRoots = v["witness"].as_str().unwrap().parse().unwrap();
    let orig: SumOfRoots = "5/12, 9/20, 1/20".parse().unwrap();
    assert!((w.to_complex() - orig.to_complex()).norm() < 1e-12);

    let v = json(&["construct", "--family", "corollary2", "--params", "6"]);
    let alpha: SumOfRoots = v["alpha"].as_str().unwrap().parse().unwrap();
    assert_eq!(alpha.weight(), 6);
    assert_eq!(alpha.to_string(), v["alpha"].as_str().unwrap());
}

#[test]
fn construct_families() {
    let v = json(&["construct", "--family", "theorem1", "--params", "5:2,7:3", "--certify"]);
    assert_eq!(v["conductor"], 35);
    assert_eq!(v["index"], 6);
    assert_eq!(v["certified_length"], 5);
    assert_eq!(v["violates"], true);
    assert_eq!(v["basis"], "certified-length");
    let v = json(&["construct", "--family", "corollary1", "--params", "k=5"]);
    assert_eq!(v["weight"], 5);
    assert_eq!(v["basis"], "weight-surrogate");
}

#[test]
fn bound_command() {
    let v = json(&["bound", "--k", "5"]);
    let expected = cycloforge::bounds::main_theorem_bound(5).unwrap();
    assert!((v["log_upper"].as_f64().unwrap() - expected).abs() < 1e-9);
    assert_eq!(v["lower_observed"], 6);
    assert_eq!(v["consistent"], true);
    let v = json(&["bound", "--k", "4", "--table"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[2]["lower_observed"], 4);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["conductor", "--bogus", "1/2"]).status.code(), Some(2));
    assert_eq!(run(&["conductor", "x/y"]).status.code(), Some(2));
    assert_eq!(run(&["bound", "--k", "0"]).status.code(), Some(2));
    assert_eq!(run(&["stabilizer", "1/3", "--modulus", "4"]).status.code(), Some(2));
    assert_eq!(run(&["mvs-enum", "--weight", "9"]).status.code(), Some(3));
    assert_eq!(run(&["mvs-enum", "--weight", "7", "--node-budget", "10"]).status.code(), Some(3));
    assert_eq!(
        run(&["length", "1/7,2/7,4/7", "--max-weight", "3", "--node-budget", "5"]).status.code(),
        Some(3)
    );
}

#[test]
fn seeded_runs_are_reproducible() {
    let a = run(&["--json", "--seed", "11", "--threads", "2", "verify-paper", "--fast"]);
    let b = run(&["--json", "--seed", "11", "verify-paper", "--fast"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v.as_array().unwrap().iter().all(|l| l["pass"] == true));
}
