//! Process-level tests of the `twcoh` binary: exit codes and output formats.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use twisted_cohomology::spec_format::to_spec;
use twisted_cohomology::zoo;

fn twcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twcoh"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = twcoh(&all);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn jacobi_failure_exits_2_and_names_the_triple() {
    let o = twcoh(&["check", "--algebra", "examples/data/corrupted.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("triple (1,2,3)"), "{}", stdout(&o));
}

#[test]
fn non_solvable_algebra_exits_2() {
    let o = twcoh(&["weights", "--algebra", "examples/data/sl2.json"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn malformed_spec_exits_2() {
    let o = twcoh(&["check", "--algebra", "Cargo.toml"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error:"));
}

#[test]
fn open_form_exits_3() {
    let o = twcoh(&["betti", "--zoo", "heisenberg", "--omega", "0,0,1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("w1^w2"), "{}", stderr(&o));
}

#[test]
fn wrong_length_form_exits_3() {
    let o = twcoh(&["spectrum", "--zoo", "g0", "--omega", "1,0"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn irrational_weights_exit_4() {
    let o = twcoh(&["weights", "--algebra", "examples/data/rotation.json"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("x^2 + 1"), "{}", stderr(&o));
}

#[test]
fn usage_errors_do_not_collide_with_domain_codes() {
    let o = twcoh(&["betti"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn spectrum_table_for_diag_example() {
    let o = twcoh(&["spectrum", "--zoo", "diag_example", "--n", "3", "--omega", "1,0,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("{2 (x3)}"), "{text}");
    assert!(text.contains("nontrivial lambda: {-3, -2, -1, 0}"), "{text}");
}

#[test]
fn betti_json_document() {
    let doc = json(&["betti", "--zoo", "g0", "--omega", "1,0,0", "--lambda", "-1"]);
    assert_eq!(doc["command"], "betti");
    assert_eq!(doc["input_digest"].as_str().unwrap().len(), 64);
    assert_eq!(doc["result"]["kind"], "betti");
    assert_eq!(doc["result"]["data"]["betti"], serde_json::json!([0, 1, 1, 0]));
    assert_eq!(doc["result"]["data"]["twist"]["lambda"], "-1");
}

#[test]
fn every_subcommand_emits_json() {
    let cases: &[&[&str]] = &[
        &["check", "--zoo", "v_family", "--n", "5"],
        &["betti", "--zoo", "torus", "--n", "2"],
        &["spectrum", "--zoo", "g0", "--omega", "1,0,0"],
        &["weights", "--zoo", "diag_example"],
        &["omega-set", "--zoo", "g0"],
        &["nontrivial-set", "--zoo", "g0", "--omega", "1,0,0"],
        &["les-verify", "--zoo", "g0", "--omega", "1,0,0", "--lambda-grid", "-2..2"],
        &["novikov", "--zoo", "diag_example", "--n", "2", "--omega", "1,0,0"],
    ];
    for args in cases {
        let doc = json(args);
        assert_eq!(doc["command"], args[0], "{args:?}");
        assert!(doc["result"]["data"].is_object() || doc["result"]["data"].is_array(), "{args:?}");
    }
}

#[test]
fn nontrivial_set_json_lists_rationals() {
    let doc = json(&["nontrivial-set", "--zoo", "g0", "--omega", "1,0,0"]);
    assert_eq!(doc["result"]["data"]["set"]["lambdas"], serde_json::json!(["-1", "0", "1"]));
}

#[test]
fn spec_round_trip_preserves_the_digest() {
    let entry = zoo::v_family(5).unwrap();
    let path: PathBuf = std::env::temp_dir().join(format!("twcoh-roundtrip-{}.json", std::process::id()));
    std::fs::write(&path, to_spec(&entry.algebra).to_json()).unwrap();
    let from_file = json(&["check", "--algebra", path.to_str().unwrap()]);
    let from_zoo = json(&["check", "--zoo", "v_family", "--n", "5"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(from_file["input_digest"], from_zoo["input_digest"]);
    assert_eq!(from_file["result"], from_zoo["result"]);
}

#[test]
fn irrational_spectrum_is_a_warning_for_the_line() {
    let doc = json(&["nontrivial-set", "--algebra", "examples/data/rotation.json", "--omega", "1,0,0"]);
    assert_eq!(doc["result"]["data"]["set"]["partial"], true);
    assert!(doc["warnings"][0].as_str().unwrap().contains("x^2 + 1"));
}
