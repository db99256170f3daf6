//! Exit-status contract and end-to-end pipelines through the binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn kscert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kscert"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("kscert-cli-{}-{name}", std::process::id()))
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn passing_check_exits_zero_with_pass_verdict() {
    let out = kscert(&[
        "check", "--f", "koebe", "--g", "koebe", "--k", "1", "--lambda", "0", "--mu", "0", "--A",
        "1", "--B", "-1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = stdout_json(&out);
    assert_eq!(report["verdict"], "pass");
    assert!(report["margin"].as_f64().unwrap() > 0.0);
}

#[test]
fn failing_check_exits_one() {
    let out = kscert(&["check", "--f", "koebe", "--g", "koebe", "--A", "0.5", "--B", "-0.5"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["verdict"], "fail");
}

#[test]
fn parameter_order_violation_exits_two() {
    let out = kscert(&["check", "--g", "koebe", "--k", "1", "--lambda", "0.5", "--mu", "0.7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("mu"));
}

#[test]
fn unknown_series_source_exits_two() {
    let out = kscert(&["check", "--f", "nosuchfile.json", "--g", "koebe"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nosuchfile"));
}

#[test]
fn out_of_range_order_exits_two() {
    let out = kscert(&["catalog", "koebe", "--order", "6"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn synth_then_bounds_pipeline_passes() {
    let record = tmp("member.json");
    let out = kscert(&[
        "synth", "--seed", "7", "--k", "2", "--lambda", "0.5", "--mu", "0.25", "--order", "64",
        "--out", record.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));

    let out = kscert(&["bounds", "--member", record.to_str().unwrap(), "--nmax", "16"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = stdout_json(&out);
    assert_eq!(report["pass"], true);
    assert_eq!(report["rows"].as_array().unwrap().len(), 15);
    std::fs::remove_file(record).ok();
}

#[test]
fn starlike_check_without_member_uses_alpha() {
    let out = kscert(&["check", "--g", "gen_koebe(0.5)", "--alpha", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let out = kscert(&["check", "--g", "catalog:starlike_half_example", "--alpha", "0.75"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sufficient_exit_codes_track_the_verdict() {
    assert_eq!(
        kscert(&["sufficient", "--f", "identity", "--g", "identity", "--order", "32"])
            .status
            .code(),
        Some(0)
    );
    // the koebe coefficient sum diverges past the threshold
    assert_eq!(
        kscert(&["sufficient", "--f", "koebe", "--g", "identity", "--order", "32"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn custom_grid_flags_are_honored() {
    let out = kscert(&[
        "check", "--f", "koebe", "--g", "koebe", "--grid-radii", "0.3,0.5", "--grid-angles", "64",
        "--order", "128",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["grid"], "cli");
}

#[test]
fn grid_config_file_is_honored() {
    let config = tmp("grid.json");
    std::fs::write(&config, r#"{"radii": [0.4, 0.6], "angles": 90}"#).unwrap();
    let out = kscert(&[
        "check", "--f", "koebe", "--g", "koebe", "--grid", config.to_str().unwrap(), "--order",
        "128",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    std::fs::remove_file(config).ok();
}

#[test]
fn catalog_emits_series_json_and_applies_transform() {
    let out = kscert(&["catalog", "gen_koebe(0.5)", "--order", "16"]);
    assert_eq!(out.status.code(), Some(0));
    let series = stdout_json(&out);
    assert_eq!(series["order"], 16);
    assert_eq!(series["coeffs"][3][0].as_f64().unwrap(), 1.0);

    // transform with zero parameter turns koebe into the same geometric series
    let out = kscert(&["catalog", "koebe", "--gamma", "0", "--order", "16"]);
    let series = stdout_json(&out);
    assert!((series["coeffs"][5][0].as_f64().unwrap() - 1.0).abs() < 1e-15);

    assert_eq!(kscert(&["catalog", "nonsense"]).status.code(), Some(2));
}

#[test]
fn fs_reports_the_three_term_estimate() {
    let out = kscert(&["fs", "--delta", "0.5", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert!((report["value"].as_f64().unwrap() - 5.5).abs() < 1e-12);
    assert_eq!(report["printed_formula_caveat"], true);
}

#[test]
fn series_file_round_trips_through_check() {
    let path = tmp("series.json");
    let out = kscert(&["catalog", "koebe", "--order", "256", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = kscert(&[
        "check", "--f", path.to_str().unwrap(), "--g", path.to_str().unwrap(), "--grid-radii",
        "0.3,0.5,0.7", "--order", "256",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    std::fs::remove_file(path).ok();
}
