use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gfwigner::export;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_gfwigner"));
    c.env_remove("GFWIGNER_POLY_TABLE");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn normalize(s: &str) -> String {
    s.lines()
        .map(|l| l.split_whitespace().collect::<Vec<_>>().join(" "))
        .filter(|l| !l.is_empty())
        .collect::<Vec<_>>()
        .join("\n")
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn field_tables_match_golden() {
    for n in ["2", "3", "4"] {
        let text = stdout(&["field", "--n", n, "--table"]);
        assert_eq!(normalize(&text), normalize(&golden(&format!("field_table_n{n}.txt"))), "n = {n}");
        let csv = stdout(&["field", "--n", n, "--table", "--format", "csv"]);
        assert_eq!(csv, golden(&format!("field_table_n{n}.csv")), "n = {n}");
    }
}

#[test]
fn bell_grid_matches_golden() {
    let args = ["wigner", "--n", "2", "--state", "bell_phi_plus", "--net", "default"];
    let ascii = stdout(&[&args[..], &["--format", "ascii"]].concat());
    assert_eq!(ascii, golden("bell_phi_plus_default.ascii"));
    let csv = stdout(&[&args[..], &["--format", "csv"]].concat());
    assert_eq!(csv, golden("bell_phi_plus_default.csv"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "--n", "2"]).status.code(), Some(0));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["wigner", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["field"]).status.code(), Some(2));
    assert_eq!(run(&["field", "--n", "3", "--poly", "1001"]).status.code(), Some(2));
    assert_eq!(run(&["field", "--n", "4", "--poly", "1011"]).status.code(), Some(2));
    assert_eq!(run(&["wigner", "--n", "2", "--state", "bell_phi_plus", "--net", "qec"]).status.code(), Some(2));
    assert_eq!(run(&["wigner", "--n", "3", "--state", "bell_phi_plus"]).status.code(), Some(2));
    assert_eq!(run(&["wigner", "--n", "2", "--state", "ket_0"]).status.code(), Some(2));
    assert_eq!(run(&["wigner", "--n", "2", "--state", "no_such_state"]).status.code(), Some(2));
    assert_eq!(
        run(&["wigner", "--n", "2", "--state", "ket_01", "--net", "default", "--covariant"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["qec", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["qec", "--alpha", "0", "--beta", "0"]).status.code(), Some(2));
    assert_eq!(run(&["qec", "--alpha", "x"]).status.code(), Some(2));
    let out = run(&["wigner", "--n", "2"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--state"));
}

#[test]
fn runs_are_deterministic() {
    for args in [
        &["wigner", "--n", "2", "--state", "meanking_phi1", "--format", "json"][..],
        &["mub", "--n", "3"][..],
        &["meanking", "--format", "json"][..],
        &["qec", "--alpha", "0.6,0.1", "--beta", "0.2,-0.7", "--format", "json"][..],
    ] {
        assert_eq!(stdout(args), stdout(args), "{args:?}");
    }
}

#[test]
fn json_export_round_trips() {
    for args in [
        &["wigner", "--n", "3", "--state", "qec_logical_0", "--net", "qec", "--format", "json"][..],
        &["wigner", "--n", "2", "--state", "mixed", "--format", "json"][..],
        &["wigner", "--n", "3", "--state", "ket_101", "--covariant", "--format", "json", "--decimal"][..],
    ] {
        let text = stdout(args);
        let grid = export::from_json(&text).unwrap();
        assert_eq!(export::to_json(&grid), text, "{args:?}");
    }
    let text = stdout(&["wigner", "--n", "2", "--state", "bell_psi_minus", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["provenance"], "stabilizer-exact");
    assert_eq!(doc["n"], 2);
    assert!(doc["net_fingerprint"].as_str().unwrap().len() == 16);
}

#[test]
fn exact_and_decimal_output() {
    let exact = stdout(&["wigner", "--n", "2", "--state", "ket_00", "--covariant"]);
    assert!(exact.contains("1/4") || exact.contains("1/8"), "{exact}");
    let decimal = stdout(&["wigner", "--n", "2", "--state", "ket_00", "--covariant", "--decimal"]);
    assert!(!decimal.contains('/'), "{decimal}");
    let mixed = stdout(&["wigner", "--n", "2", "--state", "mixed"]);
    for cell in mixed.lines().flat_map(|l| l.split(',')) {
        assert_eq!(cell, "0.0625000000000");
    }
}

#[test]
fn state_files() {
    let dir = tempfile::tempdir().unwrap();
    let reference = stdout(&["wigner", "--n", "2", "--state", "bell_phi_minus"]);

    let text = write_temp(&dir, "phi_minus.txt", "# Phi-\n-XX\n+ZZ\n");
    assert_eq!(stdout(&["wigner", "--n", "2", "--state", text.to_str().unwrap()]), reference);

    let json = write_temp(&dir, "phi_minus.json", r#"{"stabilizer": ["-XX", "ZZ"]}"#);
    assert_eq!(stdout(&["wigner", "--n", "2", "--state", json.to_str().unwrap()]), reference);

    // the same state densely: values agree after rounding
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let vector = write_temp(&dir, "vec.json", &format!(r#"{{"vector": [[{h},0],[0,0],[0,0],[-{h},0]]}}"#));
    let dense = stdout(&["wigner", "--n", "2", "--state", vector.to_str().unwrap(), "--format", "json"]);
    let grid = export::from_json(&dense).unwrap();
    let exact = export::from_json(&stdout(&["wigner", "--n", "2", "--state", "bell_phi_minus", "--format", "json"])).unwrap();
    assert_eq!(grid.rationalize(16, 1e-12).as_deref(), exact.exact());

    let matrix = write_temp(
        &dir,
        "mixed.json",
        r#"{"matrix": [[[0.5,0],[0,0]],[[0,0],[0.5,0]]]}"#,
    );
    let one = stdout(&["wigner", "--n", "1", "--state", matrix.to_str().unwrap()]);
    assert_eq!(normalize(&one), "0.250000000000,0.250000000000\n0.250000000000,0.250000000000");

    let bad = write_temp(&dir, "bad.json", r#"{"matrix": [[[1,0],[0,0]],[[0,0],[1,0]]]}"#);
    assert_eq!(run(&["wigner", "--n", "1", "--state", bad.to_str().unwrap()]).status.code(), Some(2));
    let noncommuting = write_temp(&dir, "nc.txt", "XI\nZI\n");
    assert_eq!(run(&["wigner", "--n", "2", "--state", noncommuting.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn config_file_and_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("grid.csv");
    let cfg = write_temp(
        &dir,
        "run.json",
        &format!(
            r#"{{"n": 3, "net": "qec", "state": "qec_logical_0", "format": "csv", "output": {:?}}}"#,
            out.to_str().unwrap()
        ),
    );
    let printed = stdout(&["wigner", "--config", cfg.to_str().unwrap()]);
    assert!(printed.is_empty());
    let written = std::fs::read_to_string(&out).unwrap();
    assert_eq!(written, stdout(&["wigner", "--n", "3", "--net", "qec", "--state", "qec_logical_0"]));

    // flags win over the file
    let ascii = stdout(&["wigner", "--config", cfg.to_str().unwrap(), "--format", "ascii", "-o", "/dev/stdout"]);
    assert!(ascii.contains('#'));

    let conflicting = write_temp(&dir, "bad.json", r#"{"n": 2, "net": "default", "covariant": true}"#);
    assert_eq!(run(&["wigner", "--config", conflicting.to_str().unwrap(), "--state", "ket_00"]).status.code(), Some(2));
    let unknown = write_temp(&dir, "unknown.json", r#"{"n": 2, "colour": "red"}"#);
    assert_eq!(run(&["field", "--config", unknown.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn net_files() {
    let dir = tempfile::tempdir().unwrap();
    let preset = write_temp(
        &dir,
        "meanking.json",
        r#"{"n": 2, "mode": "covariant", "signs": {"h": "++", "v": "++", "0": "+-"}}"#,
    );
    let from_file = stdout(&["meanking", "--signs", preset.to_str().unwrap()]);
    assert_eq!(from_file, stdout(&["meanking"]));

    let map = write_temp(&dir, "signs.json", r#"{"0": "-+", "2": "--"}"#);
    let a = stdout(&["bell", "--net", map.to_str().unwrap(), "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert!(doc["pattern"] == "spread" || doc["pattern"] == "concentrated");

    let wrong = write_temp(&dir, "wrong.json", r#"{"0": "-+-"}"#);
    assert_eq!(run(&["bell", "--net", wrong.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn poly_table_env() {
    let dir = tempfile::tempdir().unwrap();
    let table = write_temp(&dir, "polys.txt", "# alternate cubic\n1101\n");
    let out = bin()
        .args(["field", "--n", "3", "--table", "--format", "csv"])
        .env("GFWIGNER_POLY_TABLE", &table)
        .output()
        .unwrap();
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_ne!(csv, golden("field_table_n3.csv"));
    // x^3 + x + 1: w^3 = 1 + w
    assert!(csv.lines().nth(5).unwrap().starts_with("110,"), "{csv}");
    let missing = bin().args(["field", "--n", "3"]).env("GFWIGNER_POLY_TABLE", dir.path().join("nope")).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn application_reports() {
    let all = stdout(&["bell", "--all"]);
    assert!(all.trim_end().ends_with("64 nets: concentrated 32, spread 32"), "{all}");

    let family = stdout(&["qec", "--family", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&family).unwrap();
    assert_eq!(doc["count"], 8);
    assert_eq!(doc["covariant_count"], 4);

    let king = stdout(&["meanking", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&king).unwrap();
    assert_eq!(doc["simulation"]["success_probability"], "1.00000000000");
    assert_eq!(doc["line_sums"]["zero_lines"], serde_json::json!(["0", "0", "0"]));
    let caption = doc["caption"].as_array().unwrap();
    assert_eq!(caption[1]["printed"], "1/6");
    assert_eq!(caption[1]["derived"], "1/16");

    let csv = stdout(&["meanking", "--format", "csv"]);
    assert_eq!(csv.lines().count(), 4);

    let qec = stdout(&["qec", "--alpha", "0.6", "--beta", "0,0.8"]);
    assert!(qec.contains("max deviation"), "{qec}");
}

#[test]
fn verify_flags() {
    let out = run(&["bell", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS apps.bell_two_patterns"), "{text}");
    assert!(text.contains(" 0 failed"));

    let out = run(&["qec", "--verify", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(doc["verify"].as_array().unwrap().iter().all(|r| r["passed"] == true));

    for n in ["1", "3", "4"] {
        let text = stdout(&["verify", "--n", n, "--seed", "3"]);
        assert!(text.trim_end().ends_with(" 0 failed"), "n = {n}: {text}");
    }
}

#[test]
fn geometry_commands() {
    let rays = stdout(&["rays", "--n", "2"]);
    assert!(rays.contains("striation h: generators XI IX signs ++"), "{rays}");
    assert!(rays.contains("rays (h, v, or slope exponent"));
    let json = stdout(&["rays", "--n", "3", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(doc["striations"].as_array().unwrap().len(), 9);
    assert_eq!(doc["overlay"][7][0], "*");

    let u = stdout(&["uomega", "--n", "3", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&u).unwrap();
    assert_eq!(doc["gates"].as_array().unwrap().len(), 3);

    let mub = stdout(&["mub", "--n", "2", "--covariant"]);
    let doc: serde_json::Value = serde_json::from_str(&mub).unwrap();
    assert_eq!(doc["report"]["unbiased"], true);
    assert_eq!(doc["bases"].as_array().unwrap().len(), 5);
    assert_eq!(doc["bases"][0]["lines"][0]["amplitudes"].as_array().unwrap().len(), 4);
}
