use std::path::Path;
use std::process::Command;

use learnability_cli::{read_config, run_experiment, RunReport, Verdict, REPORT_DIR_ENV};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_learnability"))
}

fn run_in(dir: &Path, args: &[&str]) -> std::process::Output {
    bin()
        .current_dir(dir)
        .env(REPORT_DIR_ENV, dir.join("reports"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn read_report(path: &Path) -> RunReport {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn generate_then_dim_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["generate", "--kind", "threshold", "--n", "7", "--output", "t7.json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run_in(dir.path(), &["dim", "--input", "t7.json", "--certificate", "tree.json"]);
    assert!(out.status.success());
    let r = read_report(&dir.path().join("reports/dim-ldim-t7.json"));
    assert!(r.passed());
    assert_eq!(r.result["value"], 3);
    assert!(dir.path().join("tree.json").exists());
    let csv = std::fs::read_to_string(dir.path().join("reports/dim-ldim-t7.csv")).unwrap();
    assert!(csv.starts_with("name,bound,observed,pass\n"));
}

#[test]
fn report_dir_flag_beats_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["--report-dir", "elsewhere", "generate", "--kind", "point", "--n", "3", "--output", "p.json"],
    );
    assert!(out.status.success());
    assert!(dir.path().join("elsewhere/generate-p.json").exists());
    assert!(!dir.path().join("reports").exists());
}

#[test]
fn check_reports_the_point_class_cover() {
    let dir = tempfile::tempdir().unwrap();
    run_in(dir.path(), &["generate", "--kind", "point", "--n", "3", "--output", "p.json"]);
    let out = run_in(dir.path(), &["check", "--input", "p.json", "--scales", "0.5"]);
    assert!(out.status.success());
    let r = read_report(&dir.path().join("reports/check-p.json"));
    assert_eq!(r.result["pdim"]["value"], 1);
    assert_eq!(r.result["covers"][0]["holds"], false);
}

#[test]
fn dp_learn_on_three_constants() {
    let dir = tempfile::tempdir().unwrap();
    run_in(dir.path(), &["generate", "--kind", "constants", "--values", "1,2,3", "--domain", "2", "--output", "k.json"]);
    let out = run_in(
        dir.path(),
        &["dp-learn", "--input", "k.json", "--epsilon", "0.5", "--delta", "0.01", "--alpha", "0.2", "--beta", "0.2", "--seed", "1"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let r = read_report(&dir.path().join("reports/dp-learn-k-1.json"));
    let names: Vec<&str> = r.verdicts.iter().map(|v| v.name.as_str()).collect();
    assert_eq!(names, ["ledger_balances", "pruned_list", "population_loss"]);
}

#[test]
fn bad_input_exits_with_an_error() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.json"), "{\"kind\":\"multiclass\"}").unwrap();
    let out = run_in(dir.path(), &["dim", "--input", "bad.json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run_in(dir.path(), &["dim", "--input", "missing.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn experiment_runs_steps_relative_to_the_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"{
        "version": 1,
        "name": "smoke",
        "steps": [
            {"command": "generate", "kind": "complete", "n": 3, "output": "c3.json"},
            {"command": "dim", "input": "c3.json", "kind": "ldim"},
            {"command": "adversary", "input": "c3.json", "learner": "majority"},
            {"command": "gs", "input": "c3.json", "alpha": 0.1, "trials": 50, "seed": 2}
        ]
    }"#;
    std::fs::write(dir.path().join("cfg.json"), cfg).unwrap();
    let parsed = read_config(&dir.path().join("cfg.json")).unwrap();
    assert_eq!(parsed.steps.len(), 4);
    let report = run_experiment(&parsed).unwrap();
    assert!(report.verdicts.iter().any(|v| v.name == "step2.adversary.mistakes"));
    assert!(dir.path().join("c3.json").exists());

    let elsewhere = tempfile::tempdir().unwrap();
    let out = run_in(elsewhere.path(), &["experiment", "--config", dir.path().join("cfg.json").to_str().unwrap()]);
    let written = read_report(&elsewhere.path().join("reports/experiment-smoke.json"));
    assert_eq!(out.status.success(), written.passed());
}

#[test]
fn nested_experiments_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"{"version":1,"name":"n","steps":[{"command":"experiment","config":"x.json"}]}"#;
    std::fs::write(dir.path().join("cfg.json"), cfg).unwrap();
    assert!(read_config(&dir.path().join("cfg.json")).is_err());
}

#[test]
fn failing_verdicts_fail_the_report() {
    let r = RunReport {
        command: "x".into(),
        stem: "x".into(),
        verdicts: vec![Verdict::at_most("a", 1.0, 2.0), Verdict::at_least("b", 1.0, 2.0)],
        wall_clock_secs: 0.0,
        result: serde_json::Value::Null,
    };
    assert!(!r.passed());
    assert!(r.summary().contains("FAIL b: 1 (bound 2)"));
}
