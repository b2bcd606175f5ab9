use std::path::PathBuf;
use std::process::{Command, Output};

fn ramify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ramify"))
        .args(args)
        .output()
        .expect("spawn ramify")
}

fn write_spec(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("ramify-cli-test-{name}.json"));
    std::fs::write(&path, body).unwrap();
    path
}

const SQRT2: &str = r#"{
  "schema": "ramify-spec/1",
  "base": { "kind": "padic", "p": 2 },
  "steps": [ { "type": "eisenstein", "coeffs": ["-2", "0", "1"] } ]
}"#;

#[test]
fn report_emits_exact_invariants() {
    let spec = write_spec("sqrt2", SQRT2);
    let out = ramify(&["report", spec.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["schema"], "ramify-report/1");
    assert_eq!(report["breaks"]["u_max"], "3/1");
    assert_eq!(report["breaks"]["conductor"], "3/1");
    assert_eq!(report["pm"]["lower_bound"], "11/4");
    assert!(report["timing_ms"].is_u64());
}

#[test]
fn tsv_prints_the_knots() {
    let spec = write_spec("sqrt2-tsv", SQRT2);
    let out = ramify(&["report", spec.to_str().unwrap(), "--tsv"]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "u\tf(u)\n0/1\t0/1\n3/2\t3/1\n\n"
    );
}

#[test]
fn malformed_spec_exits_two_with_a_pointer() {
    let spec = write_spec(
        "bad",
        r#"{ "schema": "ramify-spec/1", "base": { "kind": "padic", "p": 2 },
            "steps": [ { "type": "eisenstein" } ] }"#,
    );
    let out = ramify(&["report", spec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("coeffs"), "{err}");
}

#[test]
fn non_galois_spec_exits_three_with_a_summary() {
    let spec = write_spec(
        "cube2",
        r#"{ "schema": "ramify-spec/1", "base": { "kind": "padic", "p": 2 },
            "steps": [ { "type": "eisenstein", "coeffs": ["-2", "0", "0", "1"] } ] }"#,
    );
    let out = ramify(&["report", spec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let summary: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(summary["verdict"], "not Galois: 1 of 3 conjugates in the field");
}

#[test]
fn catalog_lists_the_examples() {
    let out = ramify(&["catalog", "--json"]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 8);
    let sqrt2 = rows.iter().find(|r| r["name"] == "sqrt2").unwrap();
    assert_eq!(sqrt2["expected_u"], "3/1");
    assert_eq!(sqrt2["ground"], "Q_2");
    let as2 = rows.iter().find(|r| r["name"] == "as2").unwrap();
    assert_eq!(as2["ground"], "F_2((t))");
    assert_eq!(as2["expected_u"], "2/1");
}

#[test]
fn pm_scan_respects_grid_and_catalog_flags() {
    let spec = write_spec("sqrt2-scan", SQRT2);
    let out = ramify(&[
        "pm-scan",
        spec.to_str().unwrap(),
        "--m-grid",
        "2",
        "--catalog",
        "tame:2,perturb:false",
    ]);
    assert!(out.status.success());
    let view: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(view["pm"]["lower_bound"], "5/2");
    assert_eq!(view["pm"]["grid_denominator"], 2);
    assert_eq!(view["pm"]["lower_witness"]["label"], "K(pi^(1/2), w=-1)");
}

#[test]
fn lattice_labels_builtin_subextensions() {
    let spec = write_spec(
        "zeta8",
        r#"{ "schema": "ramify-spec/1", "base": { "kind": "padic", "p": 2 },
            "steps": [ { "type": "eisenstein", "coeffs": ["2", "4", "6", "4", "1"] } ],
            "generator": ["1", "1"] }"#,
    );
    let out = ramify(&["lattice", spec.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let view: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let labels: Vec<&str> = view["lattice"]["members"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m["label"].as_str().unwrap())
        .collect();
    assert_eq!(labels, vec!["L", "Q_2(i)", "Q_2(sqrt -2)", "Q_2(sqrt 2)", "K"]);
}

#[test]
fn out_flag_writes_the_file() {
    let spec = write_spec("sqrt2-out", SQRT2);
    let dest = std::env::temp_dir().join("ramify-cli-test-report-out.json");
    let _ = std::fs::remove_file(&dest);
    let out = ramify(&[
        "report",
        spec.to_str().unwrap(),
        "--out",
        dest.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&dest).unwrap()).unwrap();
    assert_eq!(report["breaks"]["u_max"], "3/1");
}
