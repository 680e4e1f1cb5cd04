use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fractk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fractk")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(name);
    let s: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&s).expect("schema compiles")
}

fn assert_valid(schema: &jsonschema::JSONSchema, v: &Value) {
    if let Err(errs) = schema.validate(v) {
        let msgs: Vec<String> = errs.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("schema violations: {msgs:#?}");
    }
}

fn tmp(dir: &tempfile::TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

#[test]
fn koch_level_four_has_768_edges() {
    let o = fractk(&["generate", "classical", "--beta", "0.5235987756", "--level", "4", "--which", "inner"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 768);
    assert_eq!(v["closed"], true);
}

#[test]
fn classical_collar_is_a_polygon_list() {
    let o = fractk(&["generate", "classical", "--level", "2", "--which", "collar"]);
    let v = json(&o);
    let polys = v.as_array().unwrap();
    assert_eq!(polys.len(), 48);
    assert!(polys.iter().all(|p| p["vertices"].as_array().unwrap().len() == 3));
}

#[test]
fn square_cells_and_quarters() {
    let v = json(&fractk(&["generate", "square", "--level", "2", "--which", "cells"]));
    assert_eq!(v["resolution"], 0.0625);
    assert_eq!(v["cells"].as_array().unwrap().len(), 256);
    let b = json(&fractk(&["generate", "square", "--level", "2", "--which", "boundary"]));
    assert_eq!(b["vertices"].as_array().unwrap().len(), 256);
    // Quarters have area ℓ²/4 and Γ_j⁻ loses half the collar area 2^{1-j}.
    let inner = json(&fractk(&["generate", "square", "--level", "2", "--which", "inner"]));
    let n = inner["quarters"].as_array().unwrap().len() as f64;
    assert_eq!(n * 0.0625 * 0.0625 / 4.0, 1.0 - 0.25);
}

#[test]
fn density_example_is_dense() {
    let o = fractk(&["classify", "density", "--json", r#"{"n":3,"d":2,"p":2,"s1":-0.9,"s2":-1.4}"#]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["answer"], "Dense");
    assert!(!v["theorem"].as_str().unwrap().is_empty());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&fractk(&["frobnicate"])), 2);
    assert_eq!(code(&fractk(&[])), 2);
    assert_eq!(code(&fractk(&["generate", "classical", "--beta", "2", "--level", "1"])), 2);
    assert_eq!(code(&fractk(&["classify", "density", "--json", "{not json"])), 2);
    assert_eq!(code(&fractk(&["classify", "density", "--json", r#"{"n":3,"d":2,"p":2}"#])), 2);
    assert_eq!(code(&fractk(&["estimate", "dimension", "--level", "4", "--scales", "5..2"])), 2);
    let o = Command::new(env!("CARGO_BIN_EXE_fractk"))
        .args(["estimate", "collar", "--level", "1"])
        .env("FRACTK_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    assert!(!o.stderr.is_empty());
}

#[test]
fn unwritable_output_exits_one() {
    let o = fractk(&["generate", "classical", "--level", "1", "--out", "/nonexistent-dir/x.json"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn svg_export() {
    let dir = tempfile::tempdir().unwrap();
    let path = tmp(&dir, "koch.svg");
    let o = fractk(&["generate", "classical", "--level", "2", "--which", "inner", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let svg = fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<path").count(), 1);
    assert_eq!(svg.matches('L').count() + svg.matches('Z').count(), 48);

    let overlay = tmp(&dir, "overlay.svg");
    let o = fractk(&["export", "svg", "--family", "square", "--level", "1", "--which", "overlay", "--out", overlay.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let svg = fs::read_to_string(&overlay).unwrap();
    assert_eq!(svg.matches("<path").count(), 2);
    assert!(svg.find("class=\"outer\"").unwrap() < svg.find("class=\"inner\"").unwrap());
}

#[test]
fn verify_reports_are_deterministic_and_valid() {
    let schema = schema("verify-report.schema.json");
    let dir = tempfile::tempdir().unwrap();
    for (check, family) in [("thickness", "square"), ("cond", "classical"), ("ball", "classical"), ("interior", "square")] {
        let run = |name: &str| {
            let p = tmp(&dir, name);
            let args = ["verify", check, "--family", family, "--level", "2", "--samples", "30", "--seed", "9", "--out"];
            let o = fractk(&[&args[..], &[p.to_str().unwrap()]].concat());
            assert_eq!(code(&o), 0, "{check}: {}", String::from_utf8_lossy(&o.stderr));
            fs::read(p).unwrap()
        };
        let a = run(&format!("{check}-a.json"));
        let b = run(&format!("{check}-b.json"));
        assert_eq!(a, b, "{check} output differs between runs");
        let v: Value = serde_json::from_slice(&a).unwrap();
        assert_valid(&schema, &v);
        assert_eq!(v["satisfied"], true);
        if matches!(check, "thickness" | "cond") {
            assert!(!v["reports"].as_array().unwrap().is_empty());
        }
    }
}

#[test]
fn tight_profile_exits_one() {
    let o = fractk(&["verify", "thickness", "--family", "square", "--level", "2", "--samples", "30", "--profile", "tight"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["satisfied"], false);
    assert_valid(&schema("verify-report.schema.json"), &v);
}

#[test]
fn quick_suite_matches_schema() {
    let o = fractk(&["verify", "suite", "--all-families", "--quick", "--seed", "3"]);
    assert_eq!(code(&o), 0);
    assert_valid(&schema("suite-report.schema.json"), &json(&o));
}

#[test]
fn dimension_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = tmp(&dir, "fit.csv");
    let o = fractk(&["estimate", "dimension", "--family", "square", "--level", "4", "--scales", "1..5", "--out", csv.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,count,logr,logcount"));
    assert_eq!(lines.count(), 5);
    let fit = json(&o);
    assert!(fit["slope"].as_f64().unwrap() > 1.0);
}

#[test]
fn estimate_series() {
    let rows = json(&fractk(&["estimate", "collar", "--family", "square", "--level", "3"]));
    assert!(rows.as_array().unwrap().iter().all(|r| r["rel_err"].as_f64().unwrap() < 1e-9));
    let o = fractk(&["estimate", "convergence", "--level", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o).as_array().unwrap().len(), 4);
    let ring = json(&fractk(&["estimate", "ring", "--level", "5", "--centers", "10"]));
    assert!(ring["c1_hat"].as_f64().unwrap() > 0.0);
}
