use std::process::{Command, Output};

fn eiscoc(args: &[&str]) -> Output {
    let dir = tempfile::tempdir().unwrap();
    Command::new(env!("CARGO_BIN_EXE_eiscoc")).args(args).env("EISCOC_CACHE", dir.path()).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn dedekind_value() {
    let o = eiscoc(&["dedekind", "1", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1/18");
    let o = eiscoc(&["--format", "json", "dedekind", "-1", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, serde_json::json!({ "num": "-1", "den": "18" }));
}

#[test]
fn theta_circle_image() {
    let o = eiscoc(&["theta", "--gamma", "2 1 5 3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("circle: (-3,1)→0 (-1,0)→1"));
    let o = eiscoc(&["--format", "json", "theta", "--gamma", "1 0 7 1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["circle"], serde_json::json!({ "breakpoints": [], "values": [0] }));
}

#[test]
fn usage_and_math_errors_exit_2() {
    assert_eq!(eiscoc(&["theta", "--gamma", "1 2 3"]).status.code(), Some(2));
    assert_eq!(eiscoc(&["theta", "--gamma", "2 2 2 2"]).status.code(), Some(2));
    assert_eq!(eiscoc(&["dedekind", "2", "4"]).status.code(), Some(2));
    assert_eq!(eiscoc(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(eiscoc(&["defect", "--level", "5", "--ell", "3", "--gamma", "1 0 1 1"]).status.code(), Some(2));
}

#[test]
fn defect_tame_trivial() {
    let o = eiscoc(&["defect", "--level", "5", "--ell", "3", "--gamma", "6 1 5 1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("tame symbol at 5: trivial"));
}

#[test]
fn verify_torsion_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = eiscoc(&["--format", "json", "verify", "torsion", "--report", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], eiscoc::report::SCHEMA);
    assert_eq!(v["suite"], "torsion");
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty() && checks.iter().all(|c| c["pass"] == true && c["criterion"] == 7));
    let file: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(file["checks"], v["checks"]);
}

#[test]
fn verify_text_is_deterministic() {
    let a = stdout(&eiscoc(&["verify", "siegel"]));
    let b = stdout(&eiscoc(&["verify", "siegel"]));
    let strip = |s: &str| s.lines().filter(|l| !l.starts_with("suite ")).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&a), strip(&b));
    assert!(a.contains("PASS c8.distribution_M4_m2_c0_d1"));
}
