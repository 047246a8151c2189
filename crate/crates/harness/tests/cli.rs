//! End-to-end checks of the `mtbench` binary: subcommand contracts and
//! exit codes.

use std::path::PathBuf;
use std::process::Command;

fn mtbench() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mtbench"))
}

fn temp_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(name);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn similarity_prints_one_number_in_range() {
    let out = mtbench()
        .args(["similarity", "--problem", "CIHS", "--samples", "20000", "--seed", "7"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let value: f64 = text.trim().parse().unwrap();
    assert!((-1.0..=1.0).contains(&value), "similarity {value}");
}

#[test]
fn igd_of_an_exported_reference_copy_is_zero() {
    let dir = temp_dir("mtbench-cli-igd");
    let front = dir.join("pstar.csv");
    let out = mtbench()
        .args([
            "refront", "--problem", "CIHS", "--task", "1", "--size", "500", "--out",
            front.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let out = mtbench()
        .args([
            "igd", "--front", front.to_str().unwrap(), "--problem", "CIHS", "--task", "1",
            "--size", "500",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let igd: f64 = String::from_utf8(out.stdout).unwrap().trim().parse().unwrap();
    assert_eq!(igd, 0.0, "a copy of the reference must score zero");
}

#[test]
fn run_smoke_writes_one_record_per_algorithm_run() {
    let dir = temp_dir("mtbench-cli-run");
    let out = mtbench()
        .args([
            "run", "--problems", "CIHS", "--runs", "2", "--budget", "20000",
            "--nsga2-pop", "20", "--momfea-pop", "40",
            "--ref-size-2obj", "200", "--ref-size-3obj", "200",
            "--out", dir.to_str().unwrap(), "--threads", "2",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let records: Vec<_> = std::fs::read_dir(dir.join("records"))
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    assert_eq!(records.len(), 4, "2 runs x 2 algorithms: {records:?}");

    // The report and curves subcommands consume what run produced.
    let out = mtbench()
        .args([
            "report", "--records",
            dir.join("records").to_str().unwrap(),
            "--out", dir.join("report").to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.join("report/igd_summary.csv").exists());
    assert!(dir.join("report/mss.csv").exists());
    assert!(dir.join("report/report.json").exists());

    let out = mtbench()
        .args([
            "curves", "--records",
            dir.join("records").to_str().unwrap(),
            "--out", dir.join("curves").to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.join("curves/CIHS_T1.csv").exists());
    assert!(dir.join("curves/CIHS_T2.csv").exists());
}

#[test]
fn gen_data_produces_a_loadable_directory() {
    let dir = temp_dir("mtbench-cli-gendata");
    let out = mtbench()
        .args(["gen-data", "--out", dir.to_str().unwrap(), "--data-seed", "5"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.join("manifest.txt").exists());
    // A similarity run against the generated directory parses it all.
    let out = mtbench()
        .args([
            "similarity", "--problem", "CIMS", "--samples", "5000", "--seed", "1",
            "--data-dir", dir.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn usage_errors_exit_1_and_data_errors_exit_2() {
    let out = mtbench().args(["transmogrify"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("USAGE"), "usage text on stderr: {stderr}");

    let out = mtbench()
        .args(["run", "--bogus-flag", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    let out = mtbench()
        .args([
            "igd", "--front", "/nonexistent/front.csv", "--problem", "CIHS", "--task", "1",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = mtbench()
        .args(["run", "--budget", "10"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "config inconsistency is a data error");
}
