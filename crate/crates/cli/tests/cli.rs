use std::process::{Command, Output};

use serde_json::Value;

fn intersective(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_intersective"))
        .args(args)
        .env("INTERSECTIVE_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn quantity(v: &Value, key: &str) -> String {
    v["quantities"][key]["value"].as_str().unwrap().to_string()
}

#[test]
fn compute_qr_13() {
    let out = intersective(&["compute", "-g", "Z13", "-s", "qr"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["mode"], "float");
    let target = 13f64.powf(-0.5);
    for key in ["lambda", "lambda_pm"] {
        let x: f64 = quantity(&v, key).parse().unwrap();
        assert!((x - target).abs() < 1e-6, "{key} = {x}");
    }
}

#[test]
fn compute_tiling_example_is_exact() {
    let v = json(&intersective(&["compute", "-g", "Z4", "-s", "list:0,1,3"]));
    assert_eq!(v["mode"], "exact");
    for key in [
        "delta",
        "lambda_minus",
        "lambda",
        "lambda_pm",
        "lambda_plus",
        "delta_bar",
    ] {
        assert_eq!(quantity(&v, key), "1/2", "{key}");
    }
}

#[test]
fn compute_zero_set_gives_ones() {
    let v = json(&intersective(&["compute", "-g", "Z2^3", "-s", "zero"]));
    for key in [
        "delta",
        "lambda_minus",
        "lambda",
        "lambda_pm",
        "lambda_plus",
        "delta_bar",
    ] {
        assert_eq!(quantity(&v, key), "1");
    }
}

#[test]
fn compute_witness_and_table() {
    let v = json(&intersective(&[
        "compute",
        "-g",
        "Z6",
        "-s",
        "list:0,1,5",
        "--witness",
    ]));
    assert_eq!(v["witnesses"]["delta"].as_array().unwrap().len(), 3);
    assert_eq!(
        v["witnesses"]["functions"]["lambda"]["primal"]
            .as_array()
            .unwrap()
            .len(),
        6
    );
    let out = intersective(&[
        "compute",
        "-g",
        "Z6",
        "-s",
        "list:0,1,5",
        "--format",
        "table",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("chain     ok"));
    assert!(text.contains("Δ = 3"));
}

#[test]
fn output_is_deterministic() {
    let args = ["compute", "-g", "Z12", "-s", "random:rho=0.5,seed=9"];
    assert_eq!(intersective(&args).stdout, intersective(&args).stdout);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| intersective(args).status.code();
    assert_eq!(code(&["compute", "-g", "Z4", "-s", "list:0,1"]), Some(2));
    assert_eq!(code(&["compute", "-g", "Q4", "-s", "zero"]), Some(2));
    assert_eq!(
        code(&["compute", "-g", "Z8", "-s", "full", "--mode", "exact"]),
        Some(3)
    );
    assert_eq!(code(&["compute", "-g", "Z2^11", "-s", "zero"]), Some(4));
    assert_eq!(code(&["verify", "nosuch"]), Some(2));
}

#[test]
fn verify_basic_z6() {
    let out = intersective(&["verify", "basic", "--group", "Z6", "--exhaustive"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["observations"]["sets"], "8");
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_duality_exact() {
    let out = intersective(&[
        "verify",
        "duality",
        "--group",
        "Z2^3",
        "--exhaustive",
        "--mode",
        "exact",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["cases"], 128);
    assert_eq!(v["modes"][0]["mode"], "exact");
}

#[test]
fn experiment_threshold_and_trial_rows() {
    let out = intersective(&[
        "experiment",
        "threshold23",
        "-g",
        "Z1001",
        "--rho",
        "0.005",
        "--trials",
        "2000",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let sigma = (0.125f64 * 0.875 / 2000.0).sqrt();
    assert!(v["metrics"]["frequency_at_least_3"].as_f64().unwrap() <= 0.125 + 3.0 * sigma);
    assert!(v.get("records").is_none());
    let rows = json(&intersective(&[
        "experiment",
        "threshold23",
        "-g",
        "Z1001",
        "--rho",
        "0.005",
        "--trials",
        "5",
        "--emit-trials",
    ]));
    assert_eq!(rows["records"].as_array().unwrap().len(), 5);
}

#[test]
fn experiment_precondition_names_the_inequality() {
    let out = intersective(&[
        "experiment",
        "randlambda",
        "-g",
        "Z2^6",
        "--rho",
        "0.01",
        "--trials",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("16c·log q/q < ρ"), "{err}");
}
