use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const K2: &str = r#"{"field":"Q","r0":1,"r1":1,"d0":[["0"]],"d1":[["x^2"]]}"#;
const K1_SUM_K3: &str =
    r#"{"field":"Q","r0":2,"r1":2,"d0":[["0","0"],["0","0"]],"d1":[["x + x^2","x^3"],["x","0"]]}"#;

fn pdvr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pdvr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pdvr-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn quiver_as_dot() {
    let o = pdvr(&["quiver", "--max", "4", "--format", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("digraph"));
    assert!(s.contains("\"K(4)[1]\""));
    assert!(s.trim_end().ends_with('}'));
}

#[test]
fn ar_verify_reports_all_true() {
    let o = pdvr(&["ar-verify", "--i", "3", "--bound", "6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ok"], true);
    for side in ["right", "left"] {
        for flag in ["rar1_ok", "rar2_ok", "rar3_ok"] {
            assert_eq!(v[side][flag], true, "{side} {flag}");
        }
    }
}

#[test]
fn bad_input_exits_two() {
    let bad = scratch("bad.json", "{\"field\": \"Q\", \"r0\": 1");
    let o = pdvr(&["decompose", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());

    let missing = pdvr(&["decompose", "/nonexistent/complex.json"]);
    assert_eq!(missing.status.code(), Some(2));

    let wrong_field = pdvr(&["--field", "Fp:7", "decompose", K2]);
    assert_eq!(wrong_field.status.code(), Some(2));

    let dot = pdvr(&["--format", "dot", "decompose", K2]);
    assert_eq!(dot.status.code(), Some(2));
}

#[test]
fn validate_rejects_nonzero_composite_with_one() {
    let o = pdvr(&[
        "validate",
        r#"{"field":"Q","r0":1,"r1":1,"d0":[["x"]],"d1":[["x"]]}"#,
    ]);
    assert_eq!(o.status.code(), Some(1));
    let ok = pdvr(&["validate", K2]);
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn decompose_inline_document() {
    let o = pdvr(&["--format", "json", "decompose", K1_SUM_K3]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let js: Vec<u64> = v["multiset"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["j"].as_u64().unwrap())
        .collect();
    assert_eq!(js, vec![1, 3]);
}

#[test]
fn identical_runs_are_byte_identical() {
    for args in [
        vec!["--format", "json", "quiver", "--max", "3"],
        vec!["--format", "json", "ar-verify", "--i", "2"],
        vec!["--seed", "11", "selftest", "--cases", "2"],
    ] {
        let a = pdvr(&args);
        let b = pdvr(&args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn emitted_complexes_parse_back() {
    let shifted = pdvr(&["--format", "json", "shift", K1_SUM_K3]);
    assert_eq!(shifted.status.code(), Some(0));
    let doc = stdout(&shifted);
    let back = pdvr(&["--format", "json", "shift", doc.trim()]);
    let a: Value = serde_json::from_str(&stdout(&back)).unwrap();
    let b: Value = serde_json::from_str(K1_SUM_K3).unwrap();
    assert_eq!(a, b);

    let t = pdvr(&["--format", "json", "tensor", K2, K2]);
    let path = scratch("tensor.json", &stdout(&t));
    let v = pdvr(&["validate", path.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0));
}

#[test]
fn map_files_resolve_relative_endpoints() {
    scratch("k2.json", K2);
    let map = scratch(
        "id.json",
        r#"{"field":"Q","src":"k2.json","dst":"k2.json","f0":[["1"]],"f1":[["1"]]}"#,
    );
    let o = pdvr(&["--format", "json", "homotopic", map.to_str().unwrap()]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["homotopic"], false);

    let x = scratch(
        "x2.json",
        r#"{"field":"Q","src":"k2.json","dst":"k2.json","f0":[["x^2"]],"f1":[["x^2"]]}"#,
    );
    let o = pdvr(&["--format", "json", "homotopic", x.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["homotopic"], true);
}

#[test]
fn serre_check_on_indecomposables() {
    let k1 = r#"{"field":"Q","r0":1,"r1":1,"d0":[["0"]],"d1":[["x"]]}"#;
    let o = pdvr(&["--format", "json", "serre-check", k1, K2]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["hom_xy"], 1);
    assert_eq!(v["equal"], true);
}
