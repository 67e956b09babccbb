use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn silence(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_silence"))
        .args(args)
        .output()
        .unwrap()
}

fn sample() -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data/sample_prices.csv")
        .to_string_lossy()
        .into_owned()
}

#[test]
fn analyze_succeeds_and_lists_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = silence(&["analyze", "--input", &sample(), "--out-dir", out]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 3);
    for line in stdout.lines() {
        assert!(Path::new(line).exists());
    }
}

#[test]
fn missing_input_file_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let o = silence(&[
        "analyze",
        "--input",
        "/nonexistent/prices.csv",
        "--out-dir",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
    assert!(!out.exists());
}

#[test]
fn bad_arguments_exit_one() {
    assert_eq!(
        silence(&["analyze", "--delta", "abc"]).status.code(),
        Some(1)
    );
    assert_eq!(silence(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(silence(&["analyze"]).status.code(), Some(1));
    assert_eq!(
        silence(&["sweep", "--input", &sample(), "--jobs", "0"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(silence(&["--help"]).status.code(), Some(0));
}

#[test]
fn missing_column_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let o = silence(&[
        "analyze",
        "--input",
        &sample(),
        "--close-col",
        "adj_close",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("adj_close"));
}

#[test]
fn analysis_failure_exits_two() {
    // a tiny threshold leaves no quiet periods at all
    let dir = tempfile::tempdir().unwrap();
    let o = silence(&[
        "analyze",
        "--input",
        &sample(),
        "--delta",
        "1e-12",
        "--out-dir",
        dir.path().join("out").to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(2),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(!dir.path().join("out").exists());
}

#[test]
fn single_interval_surrogate_is_graceful() {
    let dir = tempfile::tempdir().unwrap();
    let o = silence(&[
        "surrogate",
        "--surrogate-alpha",
        "1",
        "--surrogate-count",
        "1",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let summary = fs::read_to_string(dir.path().join("summary.tsv")).unwrap();
    assert!(summary.contains("intervals\t1\n"));
    assert!(summary.contains("alpha\tNA\n"));
}

#[test]
fn probability_at_requested_lengths() {
    let dir = tempfile::tempdir().unwrap();
    let o = silence(&[
        "probability",
        "--surrogate-alpha",
        "1",
        "--surrogate-count",
        "10000",
        "--seed",
        "5",
        "--n",
        "1",
        "--n",
        "3",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = fs::read_to_string(dir.path().join("probability.tsv")).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[1].starts_with("1\t"));
    assert!(rows[2].starts_with("3\t"));
}

#[test]
fn fit_writes_both_models() {
    let dir = tempfile::tempdir().unwrap();
    let o = silence(&[
        "fit",
        "--input",
        &sample(),
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = fs::read_to_string(dir.path().join("fit.tsv")).unwrap();
    assert!(text.contains("\nalpha\t"));
    assert!(text.contains("\nexp_rate\t"));
}
