//! The `fsoqkd` binary: subcommands, output files and exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn fsoqkd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fsoqkd"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

const SHORT_FOG: &str = "[weather]\npreset = \"FOG\"\n[sweep]\nd_start_km = 0\nd_end_km = 12\nd_step_km = 0.5\n";

#[test]
fn presets_lists_everything() {
    let o = fsoqkd(&["presets"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for name in ["CLEAR", "CLEAR_TURB", "RAIN", "RAIN_TURB", "FOG", "FOG_TURB"] {
        assert!(text.contains(name), "{name}");
    }
    for name in ["NIR800", "NIR1550", "MIR_UPCONV", "MIR_REALISTIC", "MIR_OPTIMIZED"] {
        assert!(text.contains(name), "{name}");
    }
}

#[test]
fn sweep_writes_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = write(dir.path(), "fog.toml", SHORT_FOG);
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for out in [&a, &b] {
        let o = fsoqkd(&["sweep", "--scenario", &scenario, "--out", out.to_str().unwrap(), "--seed", "5"]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let text = String::from_utf8(ta).unwrap();
    assert!(text.contains("# seed = 5"));
    assert!(text.contains("# weather.preset = FOG"));
    let data: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert!(data[0].starts_with("distance_km,geometric_db"));
    assert_eq!(data.len(), 1 + 25);
}

#[test]
fn sweep_json_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = write(dir.path(), "fog.toml", SHORT_FOG);
    let o = fsoqkd(&["sweep", "--scenario", &scenario, "--format", "json", "--trace", "MIR_UPCONV"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["metadata"]["link.trace"], "MIR_UPCONV");
    assert_eq!(v["rows"].as_array().unwrap().len(), 25);
}

#[test]
fn infeasible_everywhere_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = write(
        dir.path(),
        "far.toml",
        "[weather]\npreset = \"FOG\"\n[sweep]\nd_start_km = 100\nd_end_km = 110\nd_step_km = 5\n",
    );
    let o = fsoqkd(&["sweep", "--scenario", &scenario]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o).lines().filter(|l| !l.starts_with('#')).count(), 1 + 3);
}

#[test]
fn validation_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let typo = write(dir.path(), "typo.toml", "[source]\nmu1 = 0.5\nmu_2 = 0.2\n");
    let o = fsoqkd(&["sweep", "--scenario", &typo]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3") && err.contains("mu_2"), "{err}");

    assert_eq!(fsoqkd(&["sweep", "--preset", "HAIL"]).status.code(), Some(1));
    assert_eq!(fsoqkd(&["sweep", "--trace", "NIR2000"]).status.code(), Some(1));
    assert_eq!(fsoqkd(&["sweep", "--scenario", "/nonexistent/x.toml"]).status.code(), Some(1));
    assert_eq!(fsoqkd(&["budget", "--distance-km", "-3"]).status.code(), Some(1));
}

#[test]
fn budget_prints_components() {
    let o = fsoqkd(&["budget", "--preset", "FOG", "--trace", "MIR_UPCONV", "--distance-km", "10"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let mie = v["mie_db"].as_f64().unwrap();
    assert!((mie - 53.2056).abs() < 1e-3, "{mie}");
}

#[test]
fn mc_report_has_every_cell() {
    let o = fsoqkd(&["mc", "--transmittance", "0.1", "--pulses", "200000", "--seed", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1 + 8);
    assert_eq!(text, stdout(&fsoqkd(&["mc", "--transmittance", "0.1", "--pulses", "200000", "--seed", "3"])));
}

#[test]
fn blackbody_table() {
    let o = fsoqkd(&["blackbody", "--temperatures", "5778", "--from-um", "0.1", "--to-um", "2", "--step-um", "0.1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("wien_peak_um[5778 K] = 0.5015"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 1 + 20);
    assert_eq!(fsoqkd(&["blackbody", "--step-um", "0"]).status.code(), Some(1));
}
