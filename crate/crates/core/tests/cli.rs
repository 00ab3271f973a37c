use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modcount"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn count_worked_instance() {
    let out = run(&[
        "count",
        "--q",
        "3",
        "--d",
        "2",
        "--ram",
        "T",
        "--ram",
        "T+1",
        "--o",
        "T+2",
        "--level",
        "T^3+2*T+1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("supersingular count = 19656"));
    assert!(text.contains("255528"));
}

#[test]
fn invalid_algebra_exits_one() {
    let out = run(&[
        "volume", "--q", "2", "--d", "3", "--ram", "T", "--ram", "T+1", "--o", "T^2+T+1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invariants"));
}

#[test]
fn injected_fault_exits_two() {
    let out = run(&["--format", "json", "check", "--scale", "quick", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(2));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let volume = report["oracles"]
        .as_array()
        .unwrap()
        .iter()
        .find(|o| o["name"] == "volume")
        .unwrap();
    assert_eq!(volume["passed"], false);
    assert!(volume["counterexample"].is_string());
}

#[test]
fn quick_check_passes() {
    let out = run(&["check", "--scale", "quick"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn table_from_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.json");
    let target = dir.path().join("table.csv");
    std::fs::write(
        &config,
        r#"{"q": 3, "d": 2, "ramification": ["T", "T+1"], "o": "T+2", "level_degrees": [2, 3], "max_per_degree": 1}"#,
    )
    .unwrap();
    let out = run(&[
        "--config",
        config.to_str().unwrap(),
        "--out",
        target.to_str().unwrap(),
        "table",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(&target).unwrap();
    let mut lines = csv.lines();
    assert!(lines.next().unwrap().starts_with("level,deg_i,supersingular_count"));
    assert!(csv.contains("none admissible"));
    assert!(csv.contains("19656"));
}

#[test]
fn unknown_config_field_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.json");
    std::fs::write(&config, r#"{"q": 3, "d": 2, "o": "T+2", "colour": "blue"}"#).unwrap();
    let out = run(&["--config", config.to_str().unwrap(), "table"]);
    assert_eq!(out.status.code(), Some(1));
}
