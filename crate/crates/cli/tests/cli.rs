// Copyright 2026 liedexp contributors
// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::process::{Command, Output};

use liedexp::sweep::read_csv;

fn liedexp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liedexp")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn validate_exported_catalog_entry() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("heis3.json");
    let out = liedexp(&["catalog", "--export", "heis3", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = liedexp(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn validate_reports_broken_jacobi() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    // [e0,e1] = e2, [e1,e2] = e0, [e0,e2] = e0 violates the Jacobi identity.
    fs::write(
        &path,
        r#"{"name": "broken", "dim": 3, "brackets": [
            {"i": 0, "j": 1, "coeffs": {"2": 1.0}},
            {"i": 1, "j": 2, "coeffs": {"0": 1.0}},
            {"i": 0, "j": 2, "coeffs": {"0": 1.0}}]}"#,
    )
    .unwrap();
    let out = liedexp(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).to_lowercase().contains("jacobi"), "{}", stdout(&out));
    let out = liedexp(&["validate", "--json", path.to_str().unwrap()]);
    let v = json(&out);
    assert_eq!(v["ok"], false);
    let first = &v["violations"][0];
    for key in ["i", "j", "k", "l", "residual"] {
        assert!(first.get(key).is_some(), "missing {key} in {first}");
    }
}

#[test]
fn validate_malformed_json_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, "{ not json").unwrap();
    assert_eq!(liedexp(&["validate", path.to_str().unwrap()]).status.code(), Some(2));
    fs::write(&path, r#"{"name": "x", "dim": 1, "brackets": [], "extra": 1}"#).unwrap();
    assert_eq!(liedexp(&["validate", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn bounds_sl2_at_h() {
    let out = liedexp(&["bounds", "sl2", "--x", "1,0,0", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["exact_max"].as_f64().unwrap() - 3.194528).abs() < 1e-6);
    assert!((v["exact_min"].as_f64().unwrap() - 0.432332).abs() < 1e-6);
    assert!((v["thm1_c"].as_f64().unwrap() - 1.0).abs() < 1e-8);
    assert!((v["thm1_d"].as_f64().unwrap() - 1.0).abs() < 1e-8);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn bounds_heis3_at_e0() {
    let v = json(&liedexp(&["bounds", "heis3", "--x", "1,0,0", "--json"]));
    assert!((v["exact_min"].as_f64().unwrap() - 0.780776).abs() < 1e-5);
    assert!((v["exact_max"].as_f64().unwrap() - 1.280776).abs() < 1e-5);
    assert!(v["thm1_lower"].is_null());
    assert_eq!(v["nilp_step"], 2);
    assert!(v["nilp_lower"].as_f64().unwrap() <= v["exact_min"].as_f64().unwrap());
}

#[test]
fn bounds_abelian_all_ones() {
    let v = json(&liedexp(&["bounds", "abelian3", "--x", "0.3,0.4,0", "--json"]));
    for key in [
        "exact_min",
        "exact_max",
        "lambda_tilde_min",
        "lambda_tilde_max",
        "thm1_lower",
        "thm1_upper",
        "thm2_lower",
        "thm2_upper",
        "nilp_lower",
        "nilp_upper",
    ] {
        assert!((v[key].as_f64().unwrap() - 1.0).abs() < 1e-12, "{key}");
    }
}

#[test]
fn bounds_zero_and_mismatch() {
    let out = liedexp(&["bounds", "heis3", "--x", "0,0,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("d exp₀ is the identity"));
    assert_eq!(liedexp(&["bounds", "heis3", "--x", "1,0"]).status.code(), Some(2));
    assert_eq!(liedexp(&["bounds", "heis3", "--x", "1,a,0"]).status.code(), Some(2));
    assert_eq!(liedexp(&["bounds", "nosuchalgebra", "--x", "1"]).status.code(), Some(2));
}

#[test]
fn bounds_accepts_input_basis_with_custom_gram() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("heis3_scaled.json");
    // Gram diag(4, 1, 1): e0 has length 2, so x = e0 is the orthonormal 2·f0.
    fs::write(
        &path,
        r#"{"name": "heis3_scaled", "dim": 3,
            "brackets": [{"i": 0, "j": 1, "coeffs": {"2": 1.0}}],
            "gram": [[4, 0, 0], [0, 1, 0], [0, 0, 1]]}"#,
    )
    .unwrap();
    let v = json(&liedexp(&["bounds", path.to_str().unwrap(), "--x", "1,0,0", "--json"]));
    assert!((v["x_norm"].as_f64().unwrap() - 2.0).abs() < 1e-12);
}

#[test]
fn sweep_csv_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let out = liedexp(&[
        "sweep", "heis3", "--x-hat", "1,0,0", "--t-min", "0.1", "--t-max", "40", "--steps", "25", "--scale", "log", "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&path).unwrap();
    let rows = read_csv(text.as_bytes()).unwrap();
    assert_eq!(rows.len(), 25);
    for row in &rows {
        let q = row.t / 4.0;
        let s_max = (1.0 + q * q).sqrt() + q;
        assert!((row.exact_max - s_max).abs() <= 1e-9 * s_max);
        assert!(row.thm1_lower.is_none());
        assert!(row.violations(1e-9).is_empty());
    }
    // Writing the parsed rows again reproduces the file byte for byte.
    let mut again = Vec::new();
    liedexp::sweep::write_csv(&rows, &mut again).unwrap();
    assert_eq!(String::from_utf8(again).unwrap(), text);
    // Not-applicable cells are empty, not zero.
    assert!(text.lines().nth(1).unwrap().contains(",,"));
}

#[test]
fn sweep_warns_on_non_unit_direction() {
    let out = liedexp(&["sweep", "sl2", "--x-hat", "2,0,0", "--t-min", "1", "--t-max", "2", "--steps", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn verify_exit_codes() {
    let out = liedexp(&["verify", "weyl", "--seed", "42", "--trials", "500"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = liedexp(&["verify", "thm2", "--seed", "7", "--trials", "1000"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = liedexp(&["verify", "nosuchsuite"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("usage"));
}

#[test]
fn verify_json_is_reproducible_apart_from_wall_time() {
    let run = || {
        let mut v = json(&liedexp(&["verify", "thm1", "--seed", "3", "--trials", "30", "--json"]));
        assert!(v["wall_ms"].is_u64());
        v.as_object_mut().unwrap().remove("wall_ms");
        v
    };
    assert_eq!(run(), run());
}

#[test]
fn verify_thm1_on_heisenberg_notes_skips() {
    let v = json(&liedexp(&["verify", "thm1", "--algebras", "heis3", "--trials", "20", "--json"]));
    assert_eq!(v["skipped"], 20);
    assert!(v["notes"][0].as_str().unwrap().contains("not applicable"));
}

#[test]
fn tolerance_overrides() {
    let ok = liedexp(&["bounds", "sl2", "--x", "1,0,0", "--tol-overrides", "kappa_max=1e6,bound_rel=1e-8"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = liedexp(&["bounds", "sl2", "--x", "1,0,0", "--tol-overrides", "nonsense=3"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn info_and_catalog_list() {
    let v = json(&liedexp(&["info", "n4", "--json"]));
    assert_eq!(v["nilpotency_step"], 3);
    assert_eq!(v["valid"], true);
    let list = json(&liedexp(&["catalog", "--json"]));
    assert!(list.as_array().unwrap().len() >= 11);
}
