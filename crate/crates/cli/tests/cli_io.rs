//! End-to-end checks of the command line surface: document round trips
//! through files, exit codes, and the report formats.

use std::process::Command;

fn comox(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_comox")).args(args).output().expect("binary runs")
}

fn write_doc(name: &str, text: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join("comox-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

const CIRCLE: &str = r#"{
  "name": "circle",
  "kind": "sset",
  "dims": [
    [ { "id": "v" } ],
    [ { "id": "e", "faces": [[[], "v"], [[], "v"]] } ]
  ]
}"#;

#[test]
fn check_accepts_circle() {
    let path = write_doc("circle.json", CIRCLE);
    let out = comox(&["check", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn check_rejects_invalid_document() {
    let bad = r#"{
  "name": "bad",
  "kind": "sset",
  "dims": [
    [ {"id": "a"}, {"id": "b"}, {"id": "c"} ],
    [ {"id": "ab", "faces": [[[], "b"], [[], "a"]]},
      {"id": "ac", "faces": [[[], "c"], [[], "a"]]},
      {"id": "cb", "faces": [[[], "b"], [[], "c"]]} ],
    [ {"id": "t", "faces": [[[], "cb"], [[], "ab"], [[], "ab"]]} ]
  ]
}"#;
    let path = write_doc("bad.json", bad);
    let out = comox(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains('t'), "error names the simplex: {err}");
}

#[test]
fn homology_json_shape() {
    let path = write_doc("circle2.json", CIRCLE);
    let out = comox(&["homology", path.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["homology"][1]["rank"], 1);
    assert_eq!(v["name"], "circle");
}

#[test]
fn homology_reduced_flag() {
    let path = write_doc("circle3.json", CIRCLE);
    let out = comox(&["homology", path.to_str().unwrap(), "--reduced"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("H0 = 0"), "{text}");
    assert!(text.contains("H1 = Z"), "{text}");
}

#[test]
fn cover_reports_exceeded_for_circle() {
    let path = write_doc("circle4.json", CIRCLE);
    let out = comox(&["cover", path.to_str().unwrap(), "--max-cosets", "64"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("Exceeded"), "{text}");
}

#[test]
fn verify_unknown_suite_is_input_error() {
    let out = comox(&["verify", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_file_is_input_error() {
    let out = comox(&["homology", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sample_documents_parse_and_report() {
    // The shipped sample documents under docs/ stay valid.
    let root = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs");
    for name in [
        "circle.json",
        "rp2.json",
        "torus.json",
        "cylinder.json",
        "circle-plus.json",
        "cylinder-slash.json",
    ] {
        let path = root.join(name);
        let out = comox(&["check", path.to_str().unwrap()]);
        assert!(
            out.status.success(),
            "{name}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let out = comox(&["adjoint", "roundtrip", root.join("circle-plus.json").to_str().unwrap()]);
    assert!(out.status.success());
    let out = comox(&["adjoint", "unit", root.join("cylinder.json").to_str().unwrap()]);
    assert!(out.status.success());
}

#[test]
fn env_dimension_cap_is_honored() {
    let path = write_doc("circle5.json", CIRCLE);
    let out = Command::new(env!("CARGO_BIN_EXE_comox"))
        .env("COMODULE_MAX_DIM", "0")
        .args(["check", path.to_str().unwrap()])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2), "a 1-dimensional document must exceed a cap of 0");
}
