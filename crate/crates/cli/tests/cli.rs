use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn bethe(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bethe"));
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("BETHE_THREADS", t),
        None => cmd.env_remove("BETHE_THREADS"),
    };
    cmd.output().expect("bethe runs")
}

fn run(command: &str, config: &str) -> (i32, Value) {
    let path = fixture(config);
    let out = bethe(&[command, "--config", path.to_str().unwrap()], None);
    let code = out.status.code().unwrap();
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, report)
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap()
}

#[test]
fn two_site_spectrum_is_simple() {
    let (code, report) = run("spectrum", "two_site.json");
    assert_eq!(code, 0, "{report}");
    assert_eq!(check(&report, "solution_count")["data"]["found"], 2);
    assert_eq!(check(&report, "simple_spectrum")["data"]["applicable"], true);
    assert_eq!(check(&report, "simple_spectrum")["status"], "pass");
}

#[test]
fn untwisted_two_site_root() {
    let (code, report) = run("spectrum", "two_site_ones.json");
    assert_eq!(code, 0, "{report}");
    let sols = check(&report, "bae_residual")["data"].as_array().unwrap();
    assert_eq!(sols.len(), 1);
    let t = &sols[0]["roots"][0][0];
    assert!((t[0].as_f64().unwrap() - 0.5).abs() < 1e-10 && t[1].as_f64().unwrap().abs() < 1e-10);
    assert_eq!(check(&report, "singular_vectors")["status"], "pass");
}

#[test]
fn one_slot_fiber_coordinate() {
    let (code, report) = run("fiber", "one_slot.json");
    assert_eq!(code, 0, "{report}");
    let p = &check(&report, "wronskian")["data"][0]["coordinates"][0];
    assert!((p[0].as_f64().unwrap() - 3.0).abs() < 1e-10);
}

#[test]
fn two_site_characters() {
    let (code, report) = run("characters", "two_site.json");
    assert_eq!(code, 0, "{report}");
    let weight = &check(&report, "weight_character")["data"]["computed"];
    let singular = &check(&report, "singular_character")["data"]["computed"];
    assert_eq!(weight, &serde_json::json!([1, 2, 3, 4]));
    assert_eq!(singular, &serde_json::json!([0, 1, 1, 2]));
}

#[test]
fn every_command_passes_on_edge_cases() {
    for config in ["two_site.json", "two_site_ones.json", "one_slot.json", "empty.json", "gl1.json"] {
        let (code, report) = run("all", config);
        assert_eq!(code, 0, "{config}: {report}");
        assert_eq!(report["status"], "pass");
    }
}

#[test]
fn corrupted_operator_fails() {
    let (code, report) = run("verify-algebra", "corrupt.json");
    assert_eq!(code, 1);
    assert_eq!(report["status"], "fail");
    assert_eq!(check(&report, "transfer_commutativity")["status"], "fail");
    assert_eq!(check(&report, "yangian_relations")["status"], "pass");
}

#[test]
fn configuration_errors_exit_64() {
    assert_eq!(run("spectrum", "repeated_q.json").0, 64);
    assert_eq!(run("spectrum", "unknown_field.json").0, 64);
    assert_eq!(run("spectrum", "missing.json").0, 64);
    assert_eq!(run("verify-algebra", "two_site_float.json").0, 64);
    assert_eq!(bethe(&["no-such-command"], None).status.code(), Some(64));
    assert_eq!(bethe(&["spectrum"], None).status.code(), Some(64));
    assert_eq!(bethe(&["--help"], None).status.code(), Some(0));
    assert_eq!(bethe(&["spectrum", "--config", fixture("two_site.json").to_str().unwrap()], Some("x")).status.code(), Some(64));
}

#[test]
fn solver_shortfall_exits_2() {
    let (code, report) = run("spectrum", "starved.json");
    assert_eq!(code, 2, "{report}");
    assert_eq!(check(&report, "solution_count")["status"], "nonconvergence");
}

#[test]
fn reports_are_reproducible() {
    let path = fixture("three_site.json");
    let args = ["all", "--config", path.to_str().unwrap()];
    let first = bethe(&args, None);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stdout));
    for threads in [None, Some("1"), Some("3")] {
        let again = bethe(&args, threads);
        assert_eq!(again.stdout, first.stdout, "threads {threads:?}");
    }
}

#[test]
fn csv_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("roots.csv");
    let out = dir.path().join("report.json");
    let cfg = fixture("three_site.json");
    let res = bethe(
        &["spectrum", "--config", cfg.to_str().unwrap(), "--csv", csv.to_str().unwrap(), "--out", out.to_str().unwrap()],
        None,
    );
    assert_eq!(res.status.code(), Some(0));
    assert!(res.stdout.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let found = check(&report, "solution_count")["data"]["found"].as_u64().unwrap() as usize;
    let mut reader = csv::Reader::from_path(&csv).unwrap();
    assert_eq!(reader.headers().unwrap(), vec!["solution", "colour", "index", "re", "im"]);
    // (2,1): one root of colour 1 per solution
    assert_eq!(reader.records().count(), found);
}
