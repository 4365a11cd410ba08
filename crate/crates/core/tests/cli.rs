use std::path::Path;
use std::process::{Command, Output};

fn imagewell(args: &[&str], env_config: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_imagewell"));
    cmd.args(args).env_remove("IMAGEWELL_CONFIG");
    if let Some(p) = env_config {
        cmd.env("IMAGEWELL_CONFIG", p);
    }
    cmd.output().unwrap()
}

fn header(csv: &str) -> Vec<String> {
    csv.lines().next().unwrap().split(',').map(str::to_owned).collect()
}

#[test]
fn csv_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for out in [&a, &b] {
        let o = imagewell(&["plates", "--gap", "0.6:3:6", "--states", "2", "--out", out.to_str().unwrap()], None);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn every_column_carries_a_unit() {
    let runs: [&[&str]; 6] = [
        &["potential", "--z0", "0.2:0.8:3", "--k1", "metal", "--k3", "4"],
        &["eigen", "--width", "1.5", "--states", "2"],
        &["schottky", "--material", "InSb", "--gap", "0:2:2", "--states", "2"],
        &["film", "--material", "LHe", "--layers", "1:2"],
        &["plates", "--gap", "1", "--states", "2"],
        &["levitate", "--gap", "0.5:0.6:2", "--electrons", "10", "--area", "1e-6"],
    ];
    for args in runs {
        let o = imagewell(args, None);
        assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        let text = String::from_utf8(o.stdout).unwrap();
        for col in header(&text) {
            assert!(col.ends_with(')') && col.contains('('), "{args:?}: column {col}");
        }
        assert!(text.lines().count() >= 2);
    }
}

#[test]
fn failed_rows_set_exit_status() {
    let o = imagewell(&["film", "--material", "sAr", "--layers", "1:2", "--states", "1"], None);
    assert_eq!(o.status.code(), Some(0));
    // Gaps of 0.5 and 1 mm cannot be resolved on the default grid.
    let o = imagewell(&["schottky", "--material", "GaAs", "--carrier", "hole", "--gap", "0:1e6:3"], None);
    assert_eq!(o.status.code(), Some(1));
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.contains("NaN")).count(), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("row 1 failed"));
    let o = imagewell(&["plates", "--gap", "5:1:3"], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--gap"));
    let o = imagewell(&["--help"], None);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn env_config_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.ini");
    std::fs::write(&cfg, "[general]\nformat = json\n\n[schottky]\nmaterial = GaAs\ngap = 0:1:2\n").unwrap();
    let o = imagewell(&["schottky"], Some(&cfg));
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["command"], "schottky");
    assert_eq!(doc["rows"].as_array().unwrap().len(), 2);
    assert_eq!(doc["metadata"]["registry_version"], "1");

    let o = imagewell(&["schottky", "--format", "csv", "--gap", "3"], Some(&cfg));
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().nth(1).unwrap().starts_with("3e0,"));
}

#[test]
fn box_levitation_reproduces_closed_form() {
    let o = imagewell(&["levitate", "--model", "box", "--gap", "1", "--particle", "1.67e-27"], None);
    let text = String::from_utf8(o.stdout).unwrap();
    let mass: f64 = text.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!((mass / 6.7022e-15 - 1.0).abs() < 1e-3);
}
