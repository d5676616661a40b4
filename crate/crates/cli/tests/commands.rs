use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use permlike::cli::certificate_from_json;
use permlike::oracle::{verify_certificate, Tier};

fn permlike(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permlike"))
        .args(args)
        .env("PERMLIKE_WORKERS", "1")
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn dihedral_spec_is_certified_and_written() {
    let dir = tempfile::tempdir().unwrap();
    let spec_text = r#"{"n": 4, "generators": [{"name": "A", "r": -1, "coeffs": [0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0]}]}"#;
    let spec = write(dir.path(), "dihedral.json", spec_text);
    let cert_path = dir.path().join("cert.json");
    let out = permlike(&["check", &spec, "--tier", "both", "--out", cert_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let cert = certificate_from_json(&fs::read_to_string(&cert_path).unwrap()).unwrap();
    assert_eq!(cert.generator_permutations["C"], (1..=16).map(|k| k % 16).collect::<Vec<u64>>());
    let parsed = permlike::cli::parse_spec(spec_text).unwrap();
    assert!(verify_certificate(&parsed, &cert, Tier::Both).accepted());
}

#[test]
fn quaternion_spec_reports_witness() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "quaternion.json",
        r#"{"n": 4, "generators": [{"name": "A", "r": -1, "coeffs": [0,8,0,8,0,8,0,8,8,0,0,0,0,0,0,0]}]}"#,
    );
    let cert_path = dir.path().join("cert.json");
    let out = permlike(&["check", &spec, "--out", cert_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let text = stdout(&out);
    assert!(text.contains("A*C has characteristic polynomial (x - 1)^2(x^2 - 1)^3(x^2 + 1)^4"), "{text}");
    assert!(!cert_path.exists());
}

#[test]
fn non_normalizing_generator_is_outside_scope() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "swap.json",
        r#"{"n": 3, "generators": [{"name": "X", "coeffs": [0,0,0,0,0,0,0,0], "perm": [1,0,2,3,4,5,6,7]}]}"#,
    );
    let out = permlike(&["check", &spec]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("does not normalize"));
}

#[test]
fn malformed_files_are_errors_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "bad.json", "{\n  \"n\": 3,\n  \"generators\": [{\"name\": \"A\", \"r\": 3, \"coeffs\": [0, 0]}]\n}\n");
    let out = permlike(&["check", &spec]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("generators[0].coeffs"), "{}", stdout(&out));

    let spec = write(dir.path(), "syntax.json", "{\n  \"n\": 3,\n  \"generators\": [\n}\n");
    let out = permlike(&["check", &spec]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("line 4"), "{}", stdout(&out));

    let out = permlike(&["check", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn enumerate_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.tsv");
    let b = dir.path().join("b.tsv");
    for path in [&a, &b] {
        let out = permlike(&["enumerate", "--n", "2-3", "--twists", "seeded:42:3", "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let table = fs::read_to_string(&a).unwrap();
    assert_eq!(table, fs::read_to_string(&b).unwrap());
    assert!(table.starts_with("n\tH\ttorsion\ttwist"));
    let quaternion_rows: Vec<&str> = table.lines().filter(|l| l.contains("A:quaternion")).collect();
    assert!(!quaternion_rows.is_empty());
    assert!(quaternion_rows.iter().all(|l| l.split('\t').nth(10) == Some("2")));
}

#[test]
fn bad_arguments_are_rejected() {
    assert_ne!(permlike(&["enumerate", "--n", "9"]).status.code(), Some(0));
    assert_ne!(permlike(&["enumerate", "--n", "3", "--twists", "seeded:1"]).status.code(), Some(0));
}

#[test]
fn selftest_passes() {
    let out = permlike(&["selftest"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("9 of 9 suites passed"));
}
