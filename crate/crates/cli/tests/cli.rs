use std::path::PathBuf;
use std::process::{Command, Output};

fn mharm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mharm")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_file(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("mharm-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn coeffs_row() {
    let o = mharm(&["coeffs", "--n", "2", "--p", "1", "--q", "0", "--s", "0"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("n,p,q,s,value,error"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let v: f64 = row[4].parse().unwrap();
    assert!((v - 2.0 / 3.0).abs() < 1e-14);
}

#[test]
fn trivial_space_is_an_error() {
    let o = mharm(&["kernel", "--family", "cici", "--n", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn failing_suite_exits_one_with_report() {
    let o = mharm(&["verify", "pc"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["suite"], "pc");
    assert_eq!(v["pass"], false);
}

#[test]
fn passing_suite_exits_zero() {
    let o = mharm(&["verify", "pk", "--a", "0,0.1", "--degree", "16"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
}

#[test]
fn residues_json() {
    let o = mharm(&["residues", "--n", "2", "--p", "1", "--q", "1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert!(v["poles"].as_array().map_or(false, |p| !p.is_empty()));
}

#[test]
fn project_and_seminorm() {
    let f = temp_file("f.txt", "1,0|0,1|1|0\n0,0|0,0|2|0\n");
    let path = f.to_str().unwrap();
    let o = mharm(&["project", "--input", path, "--which", "pi0"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("# (0,0)"));
    let o = mharm(&["seminorm", "--input", path, "--name", "hardy"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(!stdout(&o).is_empty());
    std::fs::remove_file(f).ok();
}

#[test]
fn harm_coeffs_rows() {
    let o = mharm(&["harm-coeffs", "--n", "3", "--p-max", "3", "--s", "0"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("n,p,s,value,error"));
    assert_eq!(out.lines().count(), 5);
}

#[test]
fn bad_input_file() {
    let f = temp_file("bad.txt", "not a polynomial\n");
    let o = mharm(&["project", "--input", f.to_str().unwrap(), "--which", "hol"]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_file(f).ok();
}
