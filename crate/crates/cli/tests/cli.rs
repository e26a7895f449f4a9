//! Runs the `ringsums` binary end to end.

use std::process::{Command, Output};

use ringsums::oracle::power_sum_bruteforce;
use ringsums::{FiniteRing, Poly};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringsums"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = run(&all);
    let v = serde_json::from_str(&stdout(&o)).unwrap_or(Value::Null);
    (o.status.code().unwrap(), v)
}

#[test]
fn powersum_table_over_gf2() {
    let o = run(&["powersum", "--ring", "GF(2)", "--k", "3", "--mode", "both"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("closed   T^2 + T + 1"), "{out}");
    assert!(out.contains("verdict  equal"), "{out}");
}

#[test]
fn powersum_json_round_trips() {
    let (code, v) = json(&["powersum", "--ring", "Mat(2,GF(2))", "--k", "7", "--mode", "closed"]);
    assert_eq!(code, 0);
    assert_eq!(v["closed"]["case"], "mat2-f2");
    let closed = Poly::from_json(&v["closed"]["poly"]).unwrap();
    let ring = FiniteRing::parse("Mat(2,GF(2))").unwrap();
    assert_eq!(closed, power_sum_bruteforce(&ring, 7).unwrap());
    assert_eq!(closed, Poly::from_ints(&ring, &[1, 1, 1]));

    let (code, v) = json(&["powersum", "--ring", "Zmod(6)", "--k", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["equal"], true);
    let brute = Poly::from_json(&v["brute"]).unwrap();
    assert_eq!(brute.to_string(), "3*T^2 + 3*T + 3");
    // degree ascending in JSON
    assert_eq!(v["brute"]["coeffs"], serde_json::json!([3, 3, 3]));
}

#[test]
fn zeta_values() {
    let (_, v) = json(&["zeta", "--ring", "GF(4)", "--k", "3"]);
    assert_eq!(v["zeta"], serde_json::json!([1, 0]));
    let (_, v) = json(&["zeta", "--ring", "Mat(2,GF(2))", "--k", "4"]);
    assert_eq!(v["zeta"], serde_json::json!([[[0], [0]], [[0], [0]]]));
    let (code, v) = json(&["zeta", "--ring", "UT(2,GF(2))", "--k", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["zeta"], serde_json::json!([[[0], [1]], [[0], [0]]]));
    assert_eq!(v["closed"], v["zeta"]);
}

#[test]
fn invariants_subcommands() {
    let (code, v) = json(&["invariants", "--ring", "Zmod(4)", "--D", "4", "--what", "verify"]);
    assert_eq!(code, 0);
    assert_eq!((v["forward"].as_bool(), v["backward"].as_bool()), (Some(true), Some(true)));
    assert_eq!(v["invariant_count"], v["span_count"]);

    let (code, v) = json(&["invariants", "--ring", "GF(3)", "--D", "2", "--what", "bruteforce"]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], "3");
    assert_eq!(v["polys"].as_array().unwrap().len(), 3);

    let o = run(&["invariants", "--ring", "Nil(GF(2),2)", "--D", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("x^(k-1)*{0,1}"), "{out}");
    assert!(out.contains("C*(T^2 - T)^1"), "{out}");
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code().unwrap();
    assert_eq!(code(&["powersum", "--ring", "GF(6)", "--k", "3"]), 2);
    assert_eq!(code(&["powersum", "--ring", "Zmod(4", "--k", "3"]), 2);
    assert_eq!(code(&["--cap", "8", "powersum", "--ring", "GF(16)", "--k", "3", "--mode", "brute"]), 3);
    assert_eq!(code(&["powersum", "--ring", "Mat(2,Nil(GF(2),2))", "--k", "3", "--mode", "closed"]), 4);
    assert_eq!(code(&["verify", "nope"]), 2);
    assert_eq!(code(&["invariants", "--ring", "Mat(2,GF(2))", "--D", "2", "--what", "bruteforce"]), 2);
}

#[test]
fn verify_suites_report_every_case() {
    let (code, v) = json(&["verify", "erratum"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], 17);
    assert_eq!(v["failed"], 0);
    assert_eq!(v["cases"].as_array().unwrap().len(), 17);

    let (code, v) = json(&["verify", "fgor"]);
    assert_eq!(code, 0);
    assert_eq!(v["failed"], 0);

    let (_, a) = json(&["--jobs", "1", "verify", "tmain", "--kmax", "12"]);
    let (_, b) = json(&["--jobs", "4", "verify", "tmain", "--kmax", "12"]);
    assert_eq!(a["cases"], b["cases"]);
    // 8 cyclic, 2 exceptional and 4 product rings, k = 0..=12
    assert_eq!(a["cases"].as_array().unwrap().len(), (8 + 2 + 4) * 13);
}

#[test]
fn verify_invariant_suite_with_small_degree() {
    let (code, v) = json(&["verify", "twitt", "--D", "4"]);
    assert_eq!(code, 0, "{v}");
    assert!(v["cases"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}
