use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclic-orders"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--output", "json"]);
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (v, out.status.code().unwrap())
}

fn code(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "codes", name].iter().collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn golden_structure_verifies_exhaustively() {
    let (v, status) = json(&["structure", "--algebra", "golden_u_i.json", "--ideal", "1+i", "--verify"]);
    assert_eq!(status, 0);
    assert_eq!(v["case"], "InertUnit");
    assert_eq!(v["target"]["description"], "M_2(F_2)");
    assert_eq!(v["verification"]["mode"], "exhaustive");
    assert_eq!(v["verification"]["verified"], true);
    assert_eq!(v["verification"]["pairs_checked"], 256);
}

#[test]
fn nilpotent_ideals_form_the_z_chain() {
    let (v, status) = json(&["ideals", "--algebra", "golden_u_1pi.json", "--ideal", "1+i", "--brute-force"]);
    assert_eq!(status, 0);
    let chain: Vec<&str> = v["skew_chain"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["generator"].as_str().unwrap())
        .collect();
    assert_eq!(chain, ["z", "z^2"]);
    assert_eq!(v["brute_force"]["equal"], true);
}

#[test]
fn lemma_holds_on_a_thousand_trials() {
    let out = run(&["check-lemma", "--trials", "1000", "--n", "3", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("1000/1000 hold"));
}

#[test]
fn deltamin_is_deterministic_across_thread_counts() {
    let spec = code("golden_parity.json");
    let one = run(&["deltamin", "--code", &spec, "--output", "json", "--threads", "1"]);
    let many = run(&["deltamin", "--code", &spec, "--output", "json"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
    let v: Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_eq!(v["lower_bound"], 4.0);
    assert!((v["search_min"].as_f64().unwrap() - 4.0).abs() < 1e-6);
}

#[test]
fn encode_lifts_back_to_the_codeword() {
    let (v, status) = json(&["encode", "--code", &code("golden_z_code.json"), "--message", "1|2"]);
    assert_eq!(status, 0);
    assert_eq!(v["codeword"], v["lifted_outer_image"]);
    assert_eq!(v["codeword"].as_array().unwrap().len(), 3);
}

#[test]
fn composite_ideals_are_split() {
    let (v, status) = json(&["structure", "--algebra", "golden_u_i", "--ideal", "1+i, 3"]);
    assert_eq!(status, 0);
    let parts = v["crt_components"].as_array().unwrap();
    assert_eq!(parts.len(), 2);
    assert_eq!(parts[1]["target"]["description"], "M_2(F_9)");
}

#[test]
fn errors_carry_their_names_and_exit_one() {
    let (v, status) = json(&["structure", "--algebra", "golden_u_i", "--ideal", "1+i,1+i"]);
    assert_eq!((v["error"].as_str(), status), (Some("RepeatedPrime"), 1));
    let (v, status) = json(&["reduce", "1;2;3", "--algebra", "golden_u_i", "--ideal", "3"]);
    assert_eq!((v["error"].as_str(), status), (Some("InvalidInput"), 1));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn selftest_passes() {
    let (v, status) = json(&["selftest"]);
    assert_eq!(status, 0);
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 11);
}
