use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn raman(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_raman"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("RAMAN_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn config_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs"))
}

#[test]
fn scan_writes_requested_formats() {
    let dir = tempfile::tempdir().unwrap();
    let out = raman(&["scan", "--t-steps", "10", "--format", "json"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.path().join("scan.json").exists());
    assert!(!dir.path().join("scan.csv").exists());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 6 * 3 * 3);
}

#[test]
fn shipped_paper_config_matches_defaults() {
    let (d1, d2) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let cfg = config_dir().join("paper.cfg");
    assert!(raman(&["scan", "--config", cfg.to_str().unwrap()], d1.path())
        .status
        .success());
    assert!(raman(&["scan", "--format", "both"], d2.path()).status.success());
    for name in ["scan.csv", "scan.json"] {
        assert_eq!(
            fs::read(d1.path().join(name)).unwrap(),
            fs::read(d2.path().join(name)).unwrap()
        );
    }
}

#[test]
fn config_errors_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "t_steps = 1\n").unwrap();
    let out = raman(&["scan", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(2));
    fs::write(&cfg, "colour = blue\n").unwrap();
    let out = raman(&["scan", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("colour"));
    assert_eq!(raman(&["scan", "--t-max", "1e-5"], dir.path()).status.code(), Some(2));
    assert_eq!(
        raman(&["scan", "--frame", "absolute"], dir.path()).status.code(),
        Some(2)
    );
    assert_eq!(
        raman(&["scan", "--preset", "sideways"], dir.path()).status.code(),
        Some(2)
    );
}

#[test]
fn numerical_failures_exit_with_3() {
    // Default amplitudes do not fit in a cutoff-14 Fock space.
    let dir = tempfile::tempdir().unwrap();
    let out = raman(&["compare", "--alpha-scale", "1", "--t-steps", "2"], dir.path());
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn io_failures_exit_with_4() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let out = raman(&["scan", "--t-steps", "2"], &blocker.join("sub"));
    assert_eq!(out.status.code(), Some(4));
    let out = raman(&["scan", "--config", "/nonexistent/raman.cfg"], dir.path());
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn compare_reports_fits_and_f3_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config_dir().join("compare_scaled.cfg");
    let out = raman(
        &["compare", "--config", cfg.to_str().unwrap(), "--cutoff", "12"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().filter(|l| l.contains("ratio=")).count(), 18);
    assert_eq!(stdout.lines().filter(|l| l.starts_with("f3 reading")).count(), 3);
    let rows = fs::read_to_string(dir.path().join("compare.csv")).unwrap();
    // t = 0, eight grid points (t_max / 2 among them), 18 witnesses.
    assert_eq!(rows.lines().count() - 1, 9 * 18);
    assert!(dir.path().join("compare_fits.csv").exists());
}

#[test]
fn table1_prints_matrix_and_diff() {
    let dir = tempfile::tempdir().unwrap();
    let out = raman(&["table1", "--t-steps", "100"], dir.path());
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("summary:"));
    assert_eq!(
        stdout
            .lines()
            .filter(|l| l.ends_with("MATCH") || l.ends_with("FAIL") || l.ends_with("RANGE-SENSITIVE"))
            .count(),
        54
    );
    assert_eq!(fs::read_to_string(dir.path().join("table1.txt")).unwrap(), stdout);
}

#[test]
fn out_dir_defaults_to_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_raman"))
        .args(["scan", "--t-steps", "3"])
        .env("RAMAN_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("scan.csv").exists());
}
