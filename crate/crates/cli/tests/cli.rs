use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperfourier"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn complex(v: &Value) -> (f64, f64) {
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn level1_transform_of_ones() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "ones.json",
        r#"{"kind":"level1","H":2,"values":[[1,0],[1,0],[1,0],[1,0]]}"#,
    );
    let output = dir.path().join("out.json");
    let out = run(&[
        "level1",
        "transform",
        "--input",
        &input,
        "--output",
        output.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&fs::read_to_string(&output).unwrap()).unwrap();
    let values: Vec<(f64, f64)> = doc["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(complex)
        .collect();
    let expected = [(0.0, 0.0), (0.0, 0.0), (2.0, 0.0), (0.0, 0.0)];
    for (got, want) in values.iter().zip(expected) {
        assert!(
            (got.0 - want.0).abs() < 1e-12 && (got.1 - want.1).abs() < 1e-12,
            "{values:?}"
        );
    }
}

#[test]
fn level1_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let text = r#"{"kind":"level1","H":2,"values":[[0.5,-1],[0.25,2],[-3,0.125],[1,1]]}"#;
    let input = write(dir.path(), "f.json", text);
    let mid = dir.path().join("mid.json");
    let back = dir.path().join("back.json");
    assert_eq!(
        run(&[
            "level1",
            "transform",
            "--input",
            &input,
            "--output",
            mid.to_str().unwrap()
        ])
        .status
        .code(),
        Some(0)
    );
    let out = run(&[
        "level1",
        "transform",
        "--inverse",
        "--input",
        mid.to_str().unwrap(),
        "--output",
        back.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let original: Value = serde_json::from_str(text).unwrap();
    let restored: Value = serde_json::from_str(&fs::read_to_string(&back).unwrap()).unwrap();
    for (a, b) in original["values"]
        .as_array()
        .unwrap()
        .iter()
        .zip(restored["values"].as_array().unwrap())
    {
        let (a, b) = (complex(a), complex(b));
        assert!((a.0 - b.0).abs() < 1e-11 && (a.1 - b.1).abs() < 1e-11);
    }
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{\"kind\": \"level1\", \"H\": 2, ");
    let out = run(&["level1", "transform", "--input", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let short = write(
        dir.path(),
        "short.json",
        r#"{"kind":"level1","H":2,"values":[[1,0]]}"#,
    );
    assert_eq!(
        run(&["level1", "transform", "--input", &short])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["level1", "verify", "--H", "3"]).status.code(),
        Some(2)
    );
}

#[test]
fn level1_verify_passes() {
    let out = run(&["level1", "verify", "--H", "8", "--seed", "42"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["pass"], Value::Bool(true));
    assert_eq!(doc["records"].as_array().unwrap().len(), 10);
}

#[test]
fn level2_verify_small_space_passes() {
    let out = run(&[
        "level2",
        "verify",
        "--H",
        "2",
        "--Hp",
        "2",
        "--variant",
        "type1",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    assert_eq!(stdout_json(&out)["pass"], Value::Bool(true));
}

#[test]
fn level2_verify_guard_exits_3() {
    let out = run(&[
        "level2",
        "verify",
        "--H",
        "4",
        "--Hp",
        "4",
        "--variant",
        "type1",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("guard"));
    let tight = run(&[
        "level2", "verify", "--H", "2", "--Hp", "2", "--guard", "100",
    ]);
    assert_eq!(tight.status.code(), Some(3));
}

#[test]
fn level2_transform_of_builtin_delta_is_one() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "delta.json",
        r#"{"kind":"builtin","name":"delta"}"#,
    );
    let out = run(&[
        "level2",
        "transform",
        "--input",
        &input,
        "--H",
        "2",
        "--Hp",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["kind"], "product");
    for site in doc["sites"].as_array().unwrap() {
        for v in site.as_array().unwrap() {
            let (re, im) = complex(v);
            assert!((re - 1.0).abs() < 1e-12 && im.abs() < 1e-12);
        }
    }
    let missing = run(&["level2", "transform", "--input", &input]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn seeded_reports_are_reproducible() {
    let a = run(&[
        "level2",
        "verify",
        "--H",
        "2",
        "--Hp",
        "2",
        "--variant",
        "type2",
        "--seed",
        "7",
    ]);
    let b = run(&[
        "level2",
        "verify",
        "--H",
        "2",
        "--Hp",
        "2",
        "--variant",
        "type2",
        "--seed",
        "7",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn gauss_prints_both_values() {
    let out = run(&["gauss", "--N", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(complex(&doc["closed"]), (2.0, 2.0));
    let brute = complex(&doc["brute"]);
    assert!((brute.0 - 2.0).abs() < 1e-12 && (brute.1 - 2.0).abs() < 1e-12);
    assert!(doc["difference"].as_f64().unwrap() < 1e-12);
}

#[test]
fn chirp_example_gives_minus_one() {
    let out = run(&["example", "chirp", "--H", "2", "--Hp", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    let (re, im) = complex(&doc["C1"]);
    assert!((re + 1.0).abs() < 1e-12 && im.abs() < 1e-12);
    assert_eq!(doc["report"]["pass"], Value::Bool(true));
}

#[test]
fn gaussian_example_reports_constants() {
    let out = run(&["example", "gaussian", "--H", "2", "--Hp", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert!(doc["site_deviation"].as_f64().unwrap() < 0.05);
    assert_eq!(doc["report"]["pass"], Value::Bool(true));
}

#[test]
fn sweep_writes_csv_rows() {
    let out = run(&[
        "sweep",
        "--quantity",
        "C2_site",
        "--H",
        "2,4",
        "--Hp",
        "2,4,8",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("H,Hp,quantity,b_spec,re,im,deviation"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 6);
    assert!(rows[0].starts_with("2,2,C2_site,"));
    assert!(rows[5].starts_with("4,8,C2_site,"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c1.json");
    let out = run(&[
        "sweep",
        "--quantity",
        "C1",
        "--H",
        "2,4",
        "--Hp",
        "2,4,8",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    for row in rows.as_array().unwrap() {
        assert!(row["deviation"].as_f64().unwrap() < 1e-9);
    }
    assert_eq!(
        run(&["sweep", "--quantity", "C3", "--H", "2", "--Hp", "2"])
            .status
            .code(),
        Some(2)
    );
}
