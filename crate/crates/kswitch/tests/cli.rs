//! End-to-end tests of the `kswitch` binary: argument handling, config-file
//! merging, output files, and the oracle subcommand's one-line report.

use std::path::{Path, PathBuf};
use std::process::Command;

fn testdata(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("testdata").join(name)
}

fn kswitch() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kswitch"))
}

#[test]
fn oracle_subcommand_reports_toy_instance() {
    let out = kswitch()
        .args(["oracle", "--input"])
        .arg(testdata("c0_toy.txt"))
        .args(["--directed", "--constraint", "c0", "--k-max", "4"])
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.trim(), "7 graphs; components: k=2→3, k=3→3, k=4→1");
}

#[test]
fn oracle_subcommand_writes_dot_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = kswitch()
        .args(["oracle", "--input"])
        .arg(testdata("c0_toy.txt"))
        .args(["--directed", "--constraint", "c0", "--k-max", "2", "--dot"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let dot = std::fs::read_to_string(dir.path().join("markov_k2.dot")).unwrap();
    assert!(dot.starts_with("digraph markov {"));
    assert!(dot.contains("selfloops="));
}

#[test]
fn run_subcommand_writes_traces_and_summaries() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let out = kswitch()
        .args(["run", "--input"])
        .arg(testdata("rgb12.txt"))
        .arg("--colors")
        .arg(testdata("rgb12_colors.txt"))
        .args([
            "--directed",
            "--constraint",
            "colored-triangles",
            "--k-min",
            "2",
            "--k-max",
            "3",
            "--trials",
            "2000",
            "--replicates",
            "2",
            "--seed",
            "9",
            "--obs",
            "colored-triangles",
            "--interval",
            "500",
            "--out",
        ])
        .arg(&out_dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("constraint: colored-triangles"));
    assert!(stdout.contains("successes"));
    for k in 2..=3 {
        for r in 0..2 {
            let trace = out_dir.join(format!("trace_k{k}_r{r}.csv"));
            let text = std::fs::read_to_string(&trace).unwrap();
            assert!(text.starts_with("trial,rrr,ggg,bbb,"), "unexpected header in {trace:?}");
            assert_eq!(text.lines().count(), 1 + 1 + 4); // header + t=0 + 4 samples
        }
    }
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("summary.json")).unwrap())
            .unwrap();
    assert_eq!(summary["constraint"], "colored-triangles");
    assert_eq!(summary["rows"].as_array().unwrap().len(), 2);
    assert!(out_dir.join("summary.txt").exists());
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("exp.conf");
    std::fs::write(
        &config_path,
        format!(
            "input = {}\ncolors = {}\ndirected = true\nconstraint = colored-triangles\n\
             k-min = 2\nk-max = 2\ntrials = 1000\nreplicates = 1\nseed = 4\n\
             obs = colored-triangles\ninterval = 250\n",
            testdata("rgb12.txt").display(),
            testdata("rgb12_colors.txt").display()
        ),
    )
    .unwrap();
    // config alone works
    let out = kswitch().args(["run", "--config"]).arg(&config_path).output().unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("k=2"));
    assert!(!stdout.contains("k=3"));
    // an explicit flag overrides the file
    let out = kswitch()
        .args(["run", "--config"])
        .arg(&config_path)
        .args(["--k-max", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("k=3"));
}

#[test]
fn missing_direction_flag_is_an_error() {
    let out = kswitch()
        .args(["run", "--input"])
        .arg(testdata("rgb12.txt"))
        .args(["--constraint", "none", "--obs", "directed-triangles"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("--directed or --undirected"));
}

#[test]
fn starter_violation_is_reported() {
    // colored-triangles constraint on a graph with no colors attached
    let out = kswitch()
        .args(["run", "--input"])
        .arg(testdata("rgb12.txt"))
        .args([
            "--directed",
            "--constraint",
            "colored-triangles",
            "--obs",
            "colored-triangles",
        ])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("color"), "stderr: {stderr}");
}
