//! End-to-end tests of the `qvertex` binary.

use std::path::Path;
use std::process::{Command, Output};

fn qvertex(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qvertex"))
        .args(args)
        .current_dir(dir)
        .env_remove("QVERTEX_RANK_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

const DIRICHLET_N3: &str = r#"{
    "n": 3, "form": "raw",
    "A": [[[1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[1,0]]],
    "B": [[[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0]]]
}"#;

const NOT_SELF_ADJOINT_N2: &str = r#"{
    "n": 2, "form": "raw",
    "A": [[[1,0],[0,0]],[[0,0],[1,0]]],
    "B": [[[0,0],[1,0]],[[0,0],[0,0]]]
}"#;

#[test]
fn check_reports_preset_class() {
    let dir = tempfile::tempdir().unwrap();
    let output = qvertex(&["check", "--preset", "fig2"], dir.path());
    assert!(output.status.success(), "stderr: {}", stderr(&output));
    let text = stdout(&output);
    assert!(text.contains("admissible: yes"));
    assert!(text.contains("class: delta-family (r_A=3, r_B=1, r_S=1)"));
    assert!(text.contains("unitarity defect at k = 10"));
}

#[test]
fn check_reads_vertex_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dirichlet.json");
    std::fs::write(&path, DIRICHLET_N3).unwrap();
    let output = qvertex(&["check", "--input", "dirichlet.json"], dir.path());
    assert!(output.status.success(), "stderr: {}", stderr(&output));
    assert!(stdout(&output).contains("Dirichlet-disjoint"));
}

#[test]
fn check_fails_on_inadmissible_vertex() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, NOT_SELF_ADJOINT_N2).unwrap();
    let output = qvertex(&["check", "--input", "bad.json"], dir.path());
    assert_eq!(output.status.code(), Some(1));
    assert!(stdout(&output).contains("admissible: no"));
    assert!(stderr(&output).contains("self-adjoint"));
}

#[test]
fn malformed_vertex_file_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{ not json").unwrap();
    let output = qvertex(&["check", "--input", "broken.json"], dir.path());
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn input_and_preset_conflict() {
    let dir = tempfile::tempdir().unwrap();
    let output = qvertex(
        &["check", "--input", "x.json", "--preset", "fig2"],
        dir.path(),
    );
    assert_eq!(output.status.code(), Some(2));
    let output = qvertex(&["check"], dir.path());
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn unknown_preset_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let output = qvertex(&["check", "--preset", "fig3"], dir.path());
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("unknown preset"));
}

#[test]
fn rank_tolerance_env_is_validated() {
    let dir = tempfile::tempdir().unwrap();
    let output = Command::new(env!("CARGO_BIN_EXE_qvertex"))
        .args(["check", "--preset", "fig2"])
        .current_dir(dir.path())
        .env("QVERTEX_RANK_TOL", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));

    let output = Command::new(env!("CARGO_BIN_EXE_qvertex"))
        .args(["check", "--preset", "fig2"])
        .current_dir(dir.path())
        .env("QVERTEX_RANK_TOL", "1e-8")
        .output()
        .unwrap();
    assert!(output.status.success());
}

#[test]
fn sweep_writes_deterministic_tables() {
    let dir = tempfile::tempdir().unwrap();
    let run = |out: &str, extra: &[&str]| {
        let mut args = vec![
            "sweep",
            "--preset",
            "fig2",
            "--kmin",
            "1e-2",
            "--kmax",
            "1e2",
            "--points",
            "16",
            "--out",
            out,
        ];
        args.extend_from_slice(extra);
        qvertex(&args, dir.path())
    };

    let output = run("first.csv", &[]);
    assert!(output.status.success(), "stderr: {}", stderr(&output));
    let first = std::fs::read_to_string(dir.path().join("first.csv")).unwrap();
    let mut lines = first.lines();
    assert_eq!(
        lines.next().unwrap(),
        "k,R1,R2,R3,T12,T13,T21,T23,T31,T32"
    );
    assert_eq!(lines.clone().count(), 16);
    for line in lines {
        assert_eq!(line.split(',').count(), 10);
    }

    let refused = run("first.csv", &[]);
    assert_eq!(refused.status.code(), Some(1));
    assert!(stderr(&refused).contains("refusing to overwrite"));

    let forced = run("first.csv", &["--force"]);
    assert!(forced.status.success());

    let second = run("second.csv", &[]);
    assert!(second.status.success());
    let second_text = std::fs::read_to_string(dir.path().join("second.csv")).unwrap();
    assert_eq!(first, second_text, "sweeps must be reproducible");
}

#[test]
fn sweep_amplitude_table_has_re_im_columns() {
    let dir = tempfile::tempdir().unwrap();
    let output = qvertex(
        &[
            "sweep",
            "--preset",
            "fig8",
            "--points",
            "4",
            "--out",
            "amp.csv",
            "--amplitudes",
        ],
        dir.path(),
    );
    assert!(output.status.success(), "stderr: {}", stderr(&output));
    let text = std::fs::read_to_string(dir.path().join("amp.csv")).unwrap();
    assert!(text
        .lines()
        .next()
        .unwrap()
        .starts_with("k,R1_re,R1_im,R2_re,R2_im,R3_re,R3_im,T12_re,T12_im"));
}

#[test]
fn sweep_rejects_bad_ranges() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["sweep", "--preset", "fig2", "--kmin", "0", "--out", "x.csv"],
        vec![
            "sweep", "--preset", "fig2", "--kmin", "5", "--kmax", "1", "--out", "x.csv",
        ],
        vec![
            "sweep", "--preset", "fig2", "--points", "1", "--out", "x.csv",
        ],
    ] {
        let output = qvertex(&args, dir.path());
        assert_eq!(output.status.code(), Some(2), "args: {args:?}");
    }
}

#[test]
fn classify_reports_the_reference_patterns() {
    let dir = tempfile::tempdir().unwrap();
    let output = qvertex(&["classify", "--preset", "fig4"], dir.path());
    assert!(output.status.success(), "stderr: {}", stderr(&output));
    assert!(stdout(&output).contains("pattern: δ-δ-δ′"));

    let output = qvertex(
        &["classify", "--preset", "fig5", "--epsilon", "0.2"],
        dir.path(),
    );
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("pattern: δ-δ′-δ′"));
    assert!(text.contains("pair (3,1): delta-like (high-pass)"));
}

#[test]
fn classify_rejects_bad_epsilon() {
    let dir = tempfile::tempdir().unwrap();
    let output = qvertex(
        &["classify", "--preset", "fig4", "--epsilon", "0"],
        dir.path(),
    );
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn design_output_round_trips_through_classify() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("request.json"),
        r#"{"pairs": {"12": "low", "23": "high", "31": "high"}}"#,
    )
    .unwrap();
    let output = qvertex(
        &["design", "--spec", "request.json", "--out", "vertex.json"],
        dir.path(),
    );
    assert!(output.status.success(), "stderr: {}", stderr(&output));
    let text = stdout(&output);
    assert!(text.contains("requested low-pass, achieved delta-prime-like"));
    assert!(text.contains("pattern: δ-δ-δ′"));

    let output = qvertex(&["classify", "--input", "vertex.json"], dir.path());
    assert!(output.status.success(), "stderr: {}", stderr(&output));
    assert!(stdout(&output).contains("pattern: δ-δ-δ′"));

    let refused = qvertex(
        &["design", "--spec", "request.json", "--out", "vertex.json"],
        dir.path(),
    );
    assert_eq!(refused.status.code(), Some(1));
}

#[test]
fn malformed_filter_specs_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        r#"{"pairs": {"12": "low", "12": "high", "23": "high", "31": "high"}}"#,
        r#"{"pairs": {"12": "band", "23": "high", "31": "high"}}"#,
        r#"{"pairs": {"12": "low", "23": "high"}}"#,
        "not json",
    ];
    for (index, text) in cases.iter().enumerate() {
        let name = format!("spec{index}.json");
        std::fs::write(dir.path().join(&name), text).unwrap();
        let output = qvertex(&["design", "--spec", &name, "--out", "v.json"], dir.path());
        assert_eq!(output.status.code(), Some(2), "spec: {text}");
    }

    let missing = qvertex(&["design", "--spec", "absent.json", "--out", "v.json"], dir.path());
    assert_eq!(missing.status.code(), Some(1));
}
