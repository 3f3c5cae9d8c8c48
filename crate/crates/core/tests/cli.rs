use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use helly_core::geom::samples::square2;
use helly_core::io::read_certificate;
use helly_core::lemma::{build_certificate, verify_certificate, VerificationReport};

const SQUARE: &str = r#"{"core": [[-1,-1],[1,-1],[1,1],[-1,1]], "radius": 0}"#;
const DISC: &str = r#"{"core": [[0,0]], "radius": 1}"#;
const STADIUM: &str = r#"{"core": [[0,0],[2,0]], "radius": 1}"#;

fn helly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_helly")).args(args).output().expect("run helly")
}

fn put(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn bound_on_disc_is_one() {
    let dir = tempfile::tempdir().unwrap();
    let disc = put(dir.path(), "disc.json", DISC);
    let o = helly(&["bound", "--body", s(&disc)]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["min"], 1.0);
    assert_eq!(v["max"], 1.0);
    assert!(stdout(&o).contains("1.0"));
}

#[test]
fn bound_on_square_is_infinite() {
    let dir = tempfile::tempdir().unwrap();
    let sq = put(dir.path(), "sq.json", SQUARE);
    let o = helly(&["bound", "--body", s(&sq)]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["min"], "inf");
}

#[test]
fn stadium_contact_over_candidates() {
    let dir = tempfile::tempdir().unwrap();
    let st = put(dir.path(), "st.json", STADIUM);
    let o = helly(&["contact", "--body", s(&st)]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 3);
    assert!((reports[0]["lower_bound"].as_f64().unwrap() - 2.0).abs() < 1e-9);
    let o = helly(&["contact", "--body", s(&st), "--center", "1,0"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["lower_bound"], "inf");
}

#[test]
fn construct_then_verify_from_disk() {
    let dir = tempfile::tempdir().unwrap();
    let sq = put(dir.path(), "sq.json", SQUARE);
    let cert = dir.path().join("cert.json");
    let o = helly(&["construct", "--body", s(&sq), "--k", "3", "--out", s(&cert)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let summary: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(summary["n"], 40);
    assert_eq!(summary["epsilon"], 0.01);
    assert_eq!(summary["verdict"], true);

    let o = helly(&["verify", "--cert", s(&cert), "--body", s(&sq)]);
    assert_eq!(o.status.code(), Some(0));
    let from_cli: VerificationReport = serde_json::from_slice(&o.stdout).unwrap();
    let in_memory = verify_certificate(&build_certificate(&square2(), 3, 6, 100_000, 0).unwrap()).unwrap();
    let from_disk = verify_certificate(&read_certificate(&cert).unwrap()).unwrap();
    assert_eq!(from_cli, in_memory);
    assert_eq!(from_disk, in_memory);
}

#[test]
fn construct_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let sq = put(dir.path(), "sq.json", SQUARE);
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = helly(&["construct", "--body", s(&sq), "--k", "4", "--subset-budget", "500", "--seed", "9", "--out", s(p)]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn tampered_certificate_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let sq = put(dir.path(), "sq.json", SQUARE);
    let cert = dir.path().join("cert.json");
    helly(&["construct", "--body", s(&sq), "--k", "3", "--out", s(&cert)]);
    let mut v: serde_json::Value = serde_json::from_slice(&fs::read(&cert).unwrap()).unwrap();
    v["subset_results"][17]["theta"] = serde_json::json!(0.3);
    fs::write(&cert, serde_json::to_vec(&v).unwrap()).unwrap();
    let o = helly(&["verify", "--cert", s(&cert), "--body", s(&sq)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("subset_not_covered"));

    let disc = put(dir.path(), "disc.json", DISC);
    let o = helly(&["verify", "--cert", s(&cert), "--body", s(&disc)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("body_mismatch"));
}

#[test]
fn disc_construction_exhausts_budget() {
    let dir = tempfile::tempdir().unwrap();
    let disc = put(dir.path(), "disc.json", DISC);
    let out = dir.path().join("never.json");
    let o = helly(&["construct", "--body", s(&disc), "--k", "2", "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget exhausted"));
    assert!(!out.exists());
}

#[test]
fn far_points_are_not_translation_coverable() {
    let dir = tempfile::tempdir().unwrap();
    let sq = put(dir.path(), "sq.json", SQUARE);
    let far = put(dir.path(), "far.json", r#"{"points": [[0,0],[3,0]]}"#);
    let o = helly(&["cover", "--body", s(&sq), "--points", s(&far), "--mode", "translate"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["found"], false);

    let diag = put(dir.path(), "diag.json", r#"{"points": [[0,0],[2.6,0]]}"#);
    let o = helly(&["cover", "--body", s(&sq), "--points", s(&diag), "--mode", "rigid", "--grid", "360"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["found"], true);
}

#[test]
fn helly_estimate_reports_k_max() {
    let dir = tempfile::tempdir().unwrap();
    let sq = put(dir.path(), "sq.json", SQUARE);
    let pts = put(dir.path(), "p.json", r#"{"points": [[0,0],[2.6,0],[0,2.6],[-2.6,0]]}"#);
    let o = helly(&["helly-est", "--body", s(&sq), "--points", s(&pts), "--grid", "180"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["k_max"].as_u64().unwrap() < 4);
}

#[test]
fn invalid_inputs_exit_two_and_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let seg = put(dir.path(), "seg.json", r#"{"core": [[0,0],[1,0]], "radius": 0}"#);
    let o = helly(&["incircle", "--body", s(&seg)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("radius"));

    let nonconvex = put(dir.path(), "nc.json", r#"{"core": [[0,0],[2,0],[1,0.2],[1,2]], "radius": 0}"#);
    let o = helly(&["incircle", "--body", s(&nonconvex)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("core"));

    let sq = put(dir.path(), "sq.json", SQUARE);
    let pts = put(dir.path(), "p.json", r#"{"pts": [[0,0]]}"#);
    let o = helly(&["cover", "--body", s(&sq), "--points", s(&pts), "--mode", "translate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("pts"));

    let o = helly(&["alpha", "--body", s(&sq), "--center", "5,5", "--R", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = helly(&["cover", "--body", s(&sq), "--points", s(&pts), "--mode", "sideways"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn alpha_csv_matches_closed_form_and_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let sq = put(dir.path(), "sq.json", SQUARE);
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let o = helly(&["alpha", "--body", s(&sq), "--center", "0,0", "--R", "1.1,1.0,1.01", "--csv", s(p)]);
        assert_eq!(o.status.code(), Some(0));
    }
    let csv = fs::read_to_string(&a).unwrap();
    assert_eq!(csv, fs::read_to_string(&b).unwrap());
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "R,alpha");
    assert_eq!(lines[1], "1,0");
    assert!(lines[2].starts_with("1.01,"));
    let alpha: f64 = lines[3].split(',').nth(1).unwrap().parse().unwrap();
    assert!((alpha - 8.0 * (1.1f64 * 1.1 - 1.0).sqrt().atan()).abs() < 1e-10);
}

#[test]
fn plot_writes_expected_elements() {
    let dir = tempfile::tempdir().unwrap();
    let sq = put(dir.path(), "sq.json", SQUARE);
    let fig = dir.path().join("fig.svg");
    assert_eq!(helly(&["plot", "--body", s(&sq), "--out", s(&fig)]).status.code(), Some(0));
    let svg = fs::read_to_string(&fig).unwrap();
    assert_eq!(svg.matches("<circle").count(), 1);
    assert_eq!(svg.matches("<path").count(), 1);

    assert_eq!(helly(&["plot", "--body", s(&sq), "--R", "1.25", "--out", s(&fig)]).status.code(), Some(0));
    let svg = fs::read_to_string(&fig).unwrap();
    assert_eq!(svg.matches("stroke=\"red\"").count(), 4);

    let cert = dir.path().join("cert.json");
    helly(&["construct", "--body", s(&sq), "--k", "3", "--out", s(&cert)]);
    assert_eq!(helly(&["plot", "--body", s(&sq), "--cert", s(&cert), "--out", s(&fig)]).status.code(), Some(0));
    let svg = fs::read_to_string(&fig).unwrap();
    assert_eq!(svg.matches(r#"class="point""#).count(), 40);
    assert!(svg.matches("stroke=\"red\"").count() >= 1);
    let o = helly(&["plot", "--body", s(&sq), "--out", "/nonexistent-dir/fig.svg"]);
    assert_eq!(o.status.code(), Some(2));
}
