use std::process::{Command, Output};

use kmx_core::affine::{AffineElementJson, IntegrableWeightAtLevel};
use kmx_core::affweyl::AffineWeylCoset;
use kmx_core::dynkin::IndexReport;
use kmx_core::latgrass::LatticePointJson;
use serde_json::Value;

fn kmx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kmx")).args(args).output().expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = kmx(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn trivial_index_is_zero() {
    let v = json_ok(&["index", "--type", "A", "--rank", "1", "--weight", "0"]);
    assert_eq!(v["payload"]["weight_sum_value"], "0");
    assert_eq!(v["payload"]["string_sum_value"], 0);
    let report: IndexReport = serde_json::from_value(v["payload"].clone()).unwrap();
    assert!(report.agrees);
    assert!(!v["provenance"].as_array().unwrap().is_empty());
}

#[test]
fn g2_indices() {
    let v = json_ok(&["index", "--type", "G", "--rank", "2", "--weight", "0,1"]);
    assert_eq!(v["payload"]["dimension"], 14);
    assert_eq!(v["payload"]["weight_sum_value"], "8");
    let v = json_ok(&["index", "--type", "G", "--rank", "2", "--weight", "1,0"]);
    assert_eq!(v["payload"]["dimension"], 7);
    assert_eq!(v["payload"]["weight_sum_value"], "2");
}

#[test]
fn weight_string_sweep_has_51_equal_pairs() {
    let v = json_ok(&["identity-check", "--identity", "weight-string", "--upto", "50"]);
    assert_eq!(v["payload"]["cases"], 51);
    assert_eq!(v["payload"]["equal"], 51);
}

#[test]
fn seeded_runs_are_byte_identical() {
    let args = ["identity-check", "--identity", "bracket-laws", "--upto", "20", "--seed", "9"];
    let a = kmx(&args);
    let b = kmx(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["payload"]["equal"], 3);
}

#[test]
fn bracket_payload_round_trips() {
    let e = r#"{"summands":[{"matrix":[["0","1"],["0","0"]],"poly":{"1":"1"}}],"central":"0"}"#;
    let f = r#"{"summands":[{"matrix":[["0","0"],["1","0"]],"poly":{"-1":"1"}}],"central":"0"}"#;
    let v = json_ok(&["affine-bracket", "--n", "2", "--lhs", e, "--rhs", f]);
    let z: AffineElementJson = serde_json::from_value(v["payload"].clone()).unwrap();
    // [E t, F t^-1] = H + K
    assert_eq!(z.central, kmx_core::Rational::from_integer(1.into()));
    assert_eq!(z.summands.len(), 1);
}

#[test]
fn schubert_rows_round_trip() {
    let v = json_ok(&["schubert", "--type", "A", "--rank", "1", "--upto", "2", "--poincare", "--q", "2"]);
    let rows = v["payload"].as_array().unwrap();
    let cosets: Vec<AffineWeylCoset> = rows.iter().map(|r| serde_json::from_value(r.clone()).unwrap()).collect();
    assert_eq!(cosets.iter().map(|c| c.min_length).collect::<Vec<_>>(), vec![0, 1, 2]);
    assert_eq!(rows[1]["poincare"], serde_json::json!([1, 1]));
    assert_eq!(rows[2]["poincare_at_q"], 7);
}

#[test]
fn integrable_weights_round_trip() {
    let v = json_ok(&["integrable-weights", "--type", "A", "--rank", "2", "--level", "1"]);
    let ws: Vec<IntegrableWeightAtLevel> = serde_json::from_value(v["payload"].clone()).unwrap();
    assert_eq!(ws.len(), 3);
}

#[test]
fn latgrass_subcommands() {
    let v = json_ok(&["latgrass", "count", "--N", "2", "--n", "1", "--q", "2"]);
    assert_eq!(v["payload"]["count"], 7);
    let basis = r#"[["0","0"],["1","0"],["0","0"],["0","1"]]"#;
    let v = json_ok(&["latgrass", "member", "--N", "2", "--n", "1", "--basis", basis]);
    assert_eq!(v["payload"]["is_lattice_point"], true);
    let point: LatticePointJson = serde_json::from_value(v["payload"].clone()).unwrap();
    assert_eq!(point.into_subspace().unwrap().dimension(), 2);
    let v = json_ok(&["latgrass", "lattice", "--n", "1", "--matrix", r#"[["t","0"],["0","1"]]"#]);
    assert_eq!(v["payload"]["normalized"], serde_json::json!([["t", "0"], ["0", "t^-1"]]));
    assert_eq!(v["payload"]["lattice"]["is_lattice_point"], true);
}

#[test]
fn out_of_window_is_a_domain_error() {
    let out = kmx(&["latgrass", "cocharacter", "--n", "1", "--mu", "2,-2"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "out_of_window");
    assert_eq!(v["error"]["details"]["min_n"], 2);
}

#[test]
fn budget_is_enforced() {
    let out = Command::new(env!("CARGO_BIN_EXE_kmx"))
        .args(["latgrass", "count", "--N", "2", "--n", "2", "--q", "3"])
        .env("KMX_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "budget_exceeded");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["frobnicate"],
        vec!["index", "--type", "Q", "--rank", "1", "--weight", "0"],
        vec!["affine-bracket", "--n", "2", "--lhs", "{", "--rhs", "{}"],
        vec!["dual-coxeter"],
    ] {
        let out = kmx(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn invalid_rank_is_a_domain_error() {
    let out = kmx(&["dual-coxeter", "--type", "E", "--rank", "5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn csv_and_table_views() {
    let out = kmx(&["dual-coxeter", "--all", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 10);
    assert!(text.lines().next().unwrap().contains("family"));
    let out = kmx(&["dual-coxeter", "--all", "--format", "table"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 11);
}

#[test]
fn det_class_equals_index() {
    let v = json_ok(&["det-class", "--type", "B", "--rank", "3", "--weight", "0,0,1"]);
    assert_eq!(v["payload"]["agrees"], true);
    let v = json_ok(&["det-class", "--l", "-4"]);
    assert_eq!(v["payload"]["det_class_alpha"], -4);
}

#[test]
fn jobs_flag_keeps_output() {
    let a = kmx(&["latgrass", "count", "--N", "2", "--n", "2", "--q", "2", "--jobs", "1"]);
    let b = kmx(&["latgrass", "count", "--N", "2", "--n", "2", "--q", "2"]);
    let strip = |o: &Output| {
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v["payload"].clone()
    };
    assert_eq!(strip(&a), strip(&b));
}
