use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reebkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_reebkit"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn usizes(v: &Value) -> Vec<usize> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap() as usize)
        .collect()
}

const TRIANGLE: &str = r#"{
  "vertices": [{"id": 0, "height": 0}, {"id": 1, "height": "1/2"}, {"id": 2, "height": 1}],
  "simplices": [[0, 1], [1, 2], [0, 2]]
}"#;

#[test]
fn reeb_report_for_the_pinched_cylinder() {
    let v = json(&run(&["reeb", "--builtin", "pinched-cylinder"]));
    assert_eq!(v["critical_levels"], serde_json::json!(["0", "1"]));
    let d1 = &v["degrees"][1];
    assert_eq!(usizes(&d1["fiber_dims"]), vec![2, 2]);
    assert_eq!(usizes(&d1["differential_shape"]), vec![4, 1]);
    assert_eq!(
        (d1["rank"].as_u64(), d1["cokernel"].as_u64()),
        (Some(1), Some(3))
    );
    assert_eq!(usizes(&v["recovered_betti"]), vec![1, 3, 0]);
    assert_eq!(v["passed"], Value::Bool(true));
}

#[test]
fn zigzag_report_for_the_pinched_cylinder() {
    let v = json(&run(&["zigzag", "--builtin", "pinched-cylinder"]));
    let d1 = &v["degrees"][1];
    assert_eq!(usizes(&d1["dims"]), vec![2, 2, 3, 2, 2]);
    assert_eq!(usizes(&d1["interior_dims"]), vec![2, 3, 2]);
    assert_eq!(usizes(&d1["interior_ranks"]), vec![2, 2]);
}

#[test]
fn homology_from_standard_input() {
    let v = json(&run_stdin(
        &["homology", "-", "--levels", "1/4,1/2"],
        TRIANGLE,
    ));
    let text = v.to_string();
    assert!(text.contains("\"betti\":[1,1]"), "{text}");
}

#[test]
fn prime_field_and_custom_intervals() {
    let v = json(&run(&[
        "--field",
        "2",
        "spectral",
        "--builtin",
        "pinched-cylinder",
        "--intervals",
        "-1:5/8,3/8:2",
    ]));
    assert_eq!(v["field"], "F2");
    assert!(v.to_string().contains("[1,3,0]"));
}

#[test]
fn telescope_and_verify_pass() {
    for name in [
        "constant",
        "point-edge",
        "point-two-points-edge",
        "circle-disk",
    ] {
        let v = json(&run(&["telescope", "--builtin", name]));
        assert_eq!(v["passed"], Value::Bool(true), "{name}");
        assert!(run(&["verify", "ladder", "--builtin", name])
            .status
            .success());
    }
    for name in ["pinched-cylinder", "circle", "sphere", "torus", "point"] {
        let out = run(&["verify", "all", "--builtin", name]);
        assert_eq!(out.status.code(), Some(0), "{name}");
    }
}

#[test]
fn output_is_deterministic() {
    let a = run(&["reeb", "--builtin", "torus"]);
    let b = run(&["reeb", "--builtin", "torus"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn writes_to_an_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&[
        "-o",
        path.to_str().unwrap(),
        "homology",
        "--builtin",
        "sphere",
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "homology");
}

#[test]
fn float_heights_are_rejected() {
    let input = r#"{"vertices": [{"id": 0, "height": 0.5}], "simplices": [[0]]}"#;
    let out = run_stdin(&["homology", "-"], input);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn invalid_cover_is_an_error() {
    let out = run(&["zigzag", "--builtin", "circle", "--intervals", "0:1,2:3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cover"));
}
