use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use opgf_core::registry::BatchOutput;

fn opgf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opgf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn read_report(path: &Path) -> BatchOutput {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn list_shows_identities() {
    let out = opgf(&["list"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("H2 ")));
    assert!(text
        .lines()
        .any(|l| l.starts_with("B1 ") && l.contains("formal")));
}

#[test]
fn verify_passes_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h2.json");
    let out = opgf(&[
        "verify",
        "--id",
        "H2",
        "--param",
        "rho=1/2",
        "--param",
        "alpha1=3",
        "--order",
        "8",
        "--report",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let report = read_report(&path);
    assert_eq!(report.summary.total, 1);
    assert_eq!(report.reports[0].id, "H2");
    assert_eq!(report.reports[0].params["rho"], "1/2");
}

#[test]
fn report_round_trip_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = opgf(&[
        "verify",
        "--id",
        "L2",
        "--param",
        "alpha=1/2",
        "--order",
        "6",
        "--report",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(&path).unwrap();
    let parsed: BatchOutput = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", text);
}

#[test]
fn perturbed_identity_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let out = opgf(&[
        "verify",
        "--id",
        "H1",
        "--perturb",
        "R:3:1",
        "--order",
        "8",
        "--report",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    let report = read_report(&path);
    assert_eq!(report.summary.failed, 1);
    assert!(report.reports[0].first_mismatch.as_ref().unwrap().n >= 3);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&opgf(&["verify", "--id", "Nope"])), 2);
    assert_eq!(
        code(&opgf(&["verify", "--id", "Ultra2", "--param", "lambda=0"])),
        2
    );
    assert_eq!(
        code(&opgf(&["verify", "--id", "H1", "--param", "garbage"])),
        2
    );
    assert_eq!(
        code(&opgf(&["verify", "--id", "H1", "--perturb", "Q:1:1"])),
        2
    );
    assert_eq!(code(&opgf(&["frobnicate"])), 2);
    assert_eq!(
        code(&opgf(&["run-all", "--config", "/nonexistent/opgf.conf"])),
        2
    );
}

#[test]
fn order_zero_passes() {
    assert_eq!(
        code(&opgf(&[
            "verify",
            "--id",
            "Ultra1",
            "--param",
            "lambda=1/2",
            "--order",
            "0"
        ])),
        0
    );
}

#[test]
fn run_all_with_config() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("batch.conf");
    fs::write(
        &conf,
        "order = 6\nids = H1, Ultra1, F415\ngrid.Ultra1 = lambda=1/2; lambda=2\n",
    )
    .unwrap();
    let path = dir.path().join("all.json");
    let out = opgf(&[
        "run-all",
        "--config",
        conf.to_str().unwrap(),
        "--jobs",
        "2",
        "--report",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let report = read_report(&path);
    assert_eq!(report.summary.order, 6);
    assert_eq!(
        report.reports.iter().filter(|r| r.id == "Ultra1").count(),
        2
    );
    assert!(report.all_passed());
}

#[test]
fn bad_config_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("bad.conf");
    fs::write(&conf, "order = 6\nwhat = 1\n").unwrap();
    let out = opgf(&["run-all", "--config", conf.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}
