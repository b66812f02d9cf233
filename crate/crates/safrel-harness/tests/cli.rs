//! End-to-end checks of the `safrel` binary.

use std::path::Path;
use std::process::Command;

fn safrel() -> Command {
    Command::new(env!("CARGO_BIN_EXE_safrel"))
}

fn run_ok(args: &[&str]) -> String {
    let output = safrel().args(args).output().expect("binary runs");
    assert!(
        output.status.success(),
        "safrel {args:?} failed: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8(output.stdout).unwrap()
}

#[test]
fn initial_convergence_run_writes_all_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let stdout = run_ok(&[
        "initial-convergence",
        "--episodes",
        "5",
        "--seed",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(stdout.contains("initial-convergence"));
    for file in [
        "per_sut.csv",
        "summary.csv",
        "run_metadata.txt",
        "policy.txt",
    ] {
        assert!(out.join(file).is_file(), "{file} missing");
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |out: &Path| {
        run_ok(&[
            "homogeneous-transfer",
            "--suts",
            "3",
            "--episodes",
            "3",
            "--seed",
            "7",
            "--out",
            out.to_str().unwrap(),
        ]);
    };
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    run(&a);
    run(&b);
    for file in [
        "per_sut.csv",
        "summary.csv",
        "run_metadata.txt",
        "policy.txt",
    ] {
        assert_eq!(
            std::fs::read(a.join(file)).unwrap(),
            std::fs::read(b.join(file)).unwrap(),
            "{file} differs between identical runs"
        );
    }
}

#[test]
fn custom_catalog_and_fuzzy_config_are_honored() {
    let dir = tempfile::tempdir().unwrap();
    let catalog = dir.path().join("catalog.txt");
    std::fs::write(
        &catalog,
        "cpu-hog, 0.9, 0.05, 0.0\nanother-cpu-hog, 0.85, 0.1, 0.0\n",
    )
    .unwrap();
    let fuzzy = dir.path().join("memberships.toml");
    std::fs::write(
        &fuzzy,
        "[rt]\nlow_shoulder = 0.3\napex = 0.5\nhigh_shoulder = 0.7\n\n[util]\nhigh_shoulder = 0.4\nlow_shoulder = 0.6\n",
    )
    .unwrap();
    let out = dir.path().join("run");
    run_ok(&[
        "heterogeneous-transfer",
        "--suts",
        "3",
        "--episodes",
        "3",
        "--catalog",
        catalog.to_str().unwrap(),
        "--fuzzy-config",
        fuzzy.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    let rows = std::fs::read_to_string(out.join("per_sut.csv")).unwrap();
    assert!(rows.contains("cpu-hog"));
    let meta = std::fs::read_to_string(out.join("run_metadata.txt")).unwrap();
    assert!(meta.contains("low_shoulder=0.3"));
    assert!(meta.contains("catalog_programs = 2"));
}

#[test]
fn invalid_inputs_fail_with_a_diagnostic() {
    let status = safrel()
        .args(["homogeneous-transfer", "--epsilon", "sometimes"])
        .output()
        .unwrap();
    assert!(!status.status.success());
    assert!(String::from_utf8_lossy(&status.stderr).contains("epsilon"));

    let status = safrel()
        .args([
            "homogeneous-transfer",
            "--catalog",
            "/nonexistent/catalog.txt",
        ])
        .output()
        .unwrap();
    assert!(!status.status.success());

    let status = safrel().args(["unknown-scenario"]).output().unwrap();
    assert!(!status.status.success());
}
