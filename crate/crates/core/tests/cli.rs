use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn occwalk(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_occwalk"))
        .args(args)
        .current_dir(cwd)
        .env_remove("OCCWALK_OUT_DIR")
        .output()
        .unwrap()
}

fn column_sum(csv: &str, col: usize) -> f64 {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').nth(col).unwrap().parse::<f64>().unwrap())
        .sum()
}

#[test]
fn generate_then_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let out = occwalk(&["generate", "--n", "101", "--m", "2", "--seed", "7", "--out", "data"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let input = dir.path().join("data/ba_n101_m2_s7.csv");
    assert!(input.exists());
    assert!(dir.path().join("data/ba_n101_m2_s7.config.json").exists());

    let out = occwalk(&["analyze", input.to_str().unwrap(), "--out", "res", "--top-k", "5"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let res = dir.path().join("res/ba_n101_m2_s7");
    let report = std::fs::read_to_string(res.join("report.csv")).unwrap();
    assert!(report.starts_with("node,degree,op_c,op_q"));
    assert_eq!(report.lines().count(), 102);
    assert!((column_sum(&report, 2) - 1.0).abs() < 1e-9);
    assert!((column_sum(&report, 3) - 1.0).abs() < 1e-9);
    for f in ["op_c.csv", "op_q.csv"] {
        let text = std::fs::read_to_string(res.join(f)).unwrap();
        assert!((column_sum(&text, 1) - 1.0).abs() < 1e-9, "{f}");
    }
    let ranking = std::fs::read_to_string(res.join("ranking_c.csv")).unwrap();
    assert!(ranking.starts_with("rank,node,value"));
    assert_eq!(ranking.lines().count(), 6);

    let prov: Value = serde_json::from_slice(&std::fs::read(res.join("provenance.json")).unwrap()).unwrap();
    assert_eq!(prov["input"]["networks"][0]["edges"], 198);
    assert_eq!(prov["config"]["top_k"], 5);
    assert_eq!(prov["input"]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn disconnected_input_fails_with_error_record() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("two.csv"), "a,b\nc,d\n").unwrap();
    let out = occwalk(&["analyze", "two.csv", "--out", "res"], dir.path());
    assert!(!out.status.success());
    let record: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(record["error"], "DisconnectedGraph");
    let saved: Value = serde_json::from_slice(&std::fs::read(dir.path().join("res/error.json")).unwrap()).unwrap();
    assert_eq!(saved, record);

    let out = occwalk(&["analyze", "two.csv", "--out", "res", "--per-component"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.path().join("res/two/component-002/report.csv").exists());
}

#[test]
fn validate_reports_manifest_and_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("ml.csv"),
        "meetings,a,b\nmeetings,b,c\nphone,a,c\ncrimes,c,d,2\n",
    )
    .unwrap();
    let out = occwalk(&["validate", "ml.csv", "--kind", "multilayer"], dir.path());
    assert!(out.status.success());
    let m: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(m["layer_names"], serde_json::json!(["meetings", "phone", "crimes"]));

    std::fs::write(dir.path().join("bad.csv"), "a,b\nb,c,-2\n").unwrap();
    let out = occwalk(&["validate", "bad.csv"], dir.path());
    assert!(!out.status.success());
    let record: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(record["error"], "ParseError");
    assert!(record["message"].as_str().unwrap().contains("line 2"));
}

#[test]
fn flatten_and_compare() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("ml.csv"), "x,a,b\nx,b,c\ny,a,b\ny,c,d\n").unwrap();
    let out = occwalk(&["flatten", "ml.csv", "--mode", "sum", "-o", "flat.csv"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let flat = std::fs::read_to_string(dir.path().join("flat.csv")).unwrap();
    assert!(flat.contains("a,b,2"));

    let out = occwalk(&["compare", "--input", "flat.csv", "--k", "2"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let cmp: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(cmp["overlap_at_k"].as_f64().unwrap() >= 0.0);
    assert!(cmp["spearman_rho"].as_f64().unwrap().abs() <= 1.0);
}
