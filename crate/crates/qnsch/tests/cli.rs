use std::path::{Path, PathBuf};
use std::process::Command;

const BASE: &str = r#"{
  "scheme": "primitive",
  "grid": { "m1": 16, "m2": 16 },
  "time": { "dt": 0.001, "t_end": 0.002 },
  "physics": { "re": 100.0, "we": 1.0, "fr": 1.0, "epsilon": 0.05,
               "rho1": 10.0, "rho2": 1.0, "mu1": 10.0, "mu2": 1.0 },
  "bc": { "cell": ["periodic", "neumann"], "velocity": ["periodic", "no_slip"] },
  "scenario": { "kind": "capillary" }
}"#;

fn qnsch() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qnsch"))
}

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn code(cmd: &mut Command) -> i32 {
    cmd.output().unwrap().status.code().unwrap()
}

#[test]
fn run_writes_the_time_series() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.json", BASE);
    let out = dir.path().join("out");
    let o = qnsch().args(["run", "--config"]).arg(&cfg).arg("--out").arg(&out).output().unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(out.join("timeseries.csv")).unwrap();
    assert_eq!(csv.lines().count(), 4);
}

#[test]
fn scheme_override_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.json", BASE);
    let out = dir.path().join("out");
    let mut cmd = qnsch();
    cmd.args(["run", "--scheme", "projection", "--config"]).arg(&cfg).arg("--out").arg(&out);
    assert_eq!(code(&mut cmd), 0);
    assert_eq!(code(qnsch().args(["run", "--scheme", "nonsense", "--config"]).arg(&cfg)), 2);
}

#[test]
fn config_problems_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_config(dir.path(), "bad.json", &BASE.replace("\"m2\": 16", "\"m2\": 10"));
    assert_eq!(code(qnsch().args(["run", "--config"]).arg(&bad)), 2);
    assert_eq!(code(qnsch().args(["run", "--config", "/nonexistent.json"])), 2);
    let good = write_config(dir.path(), "c.json", BASE);
    assert_eq!(code(qnsch().args(["converge", "--levels", "1", "--config"]).arg(&good)), 2);
    assert_eq!(code(qnsch().arg("frobnicate")), 2);
}

#[test]
fn solver_failure_exits_with_3() {
    let dir = tempfile::tempdir().unwrap();
    let text = BASE.replace(
        "\"scenario\"",
        "\"multigrid\": { \"max_cycles\": 1, \"tol\": 1e-15 },\n  \"scenario\"",
    );
    let cfg = write_config(dir.path(), "c.json", &text);
    let out = dir.path().join("out");
    assert_eq!(code(qnsch().args(["run", "--config"]).arg(&cfg).arg("--out").arg(&out)), 3);
}

#[test]
fn invariant_breach_exits_with_4() {
    let dir = tempfile::tempdir().unwrap();
    let text = BASE.replace(
        "\"scenario\"",
        "\"guards\": { \"mass\": \"fail\", \"mass_tol\": 1e-300 },\n  \"scenario\"",
    );
    let cfg = write_config(dir.path(), "c.json", &text);
    let out = dir.path().join("out");
    assert_eq!(code(qnsch().args(["run", "--config"]).arg(&cfg).arg("--out").arg(&out)), 4);
    assert_eq!(code(qnsch().args(["selftest", "--tol", "1e-300"])), 4);
}

#[test]
fn selftest_passes() {
    let o = qnsch().arg("selftest").output().unwrap();
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("advection_mass") && text.contains("max violation"));
}

#[test]
fn converge_prints_a_table() {
    let dir = tempfile::tempdir().unwrap();
    let text = BASE.replace("\"t_end\": 0.002", "\"t_end\": 0.016").replace("\"dt\": 0.001", "\"dt\": 0.004");
    let cfg = write_config(dir.path(), "c.json", &text);
    let o = qnsch().args(["converge", "--levels", "2", "--config"]).arg(&cfg).output().unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("16x16") && text.contains("32x32"));
}
