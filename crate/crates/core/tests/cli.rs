use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_vsmetric"))
}

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(name)
}

fn run_in(dir: &Path, files: &[PathBuf], extra: &[&str]) -> Output {
    bin()
        .arg("run")
        .args(files)
        .arg("--out-dir")
        .arg(dir)
        .args(extra)
        .env_remove("VSMETRIC_OUT_DIR")
        .output()
        .unwrap()
}

#[test]
fn list_catalog_names_everything() {
    let out = bin().arg("list-catalog").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in [
        "sum_abs",
        "max_of",
        "identity",
        "reflect",
        "example_4_2",
        "one",
        "linear",
        "exp_decay",
    ] {
        assert!(text.contains(name), "missing {name} in\n{text}");
    }
}

#[test]
fn example_scenario_converges_and_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &[scenario("example_4_2.toml")], &[]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("example_4_2: converged"), "{stdout}");

    let payload: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("example_4_2.json")).unwrap())
            .unwrap();
    assert_eq!(payload["verdict"], "converged");
    assert!(payload["limit"].as_f64().unwrap().abs() < 1e-9);

    let csv = fs::read_to_string(dir.path().join("example_4_2.trace.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("iteration,xi,gamma,residual,bound,verdict")
    );
    assert!(csv.trim_end().ends_with(",,converged"), "{csv}");
}

#[test]
fn repeated_runs_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let files = [scenario("three_map.toml"), scenario("axioms_vector.toml")];
    run_in(a.path(), &files, &[]);
    run_in(b.path(), &files, &[]);
    for name in ["three_map.trace.csv", "axioms_vector.json"] {
        assert_eq!(
            fs::read(a.path().join(name)).unwrap(),
            fs::read(b.path().join(name)).unwrap(),
            "{name}"
        );
    }
    // The payload records the trace path; compare everything else.
    let strip = |dir: &Path| {
        let mut v: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(dir.join("three_map.json")).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("trace");
        v
    };
    assert_eq!(strip(a.path()), strip(b.path()));
}

#[test]
fn seed_override_changes_sampled_witness() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let file = [scenario("identity_contraction.toml")];
    run_in(a.path(), &file, &["--seed", "100"]);
    run_in(b.path(), &file, &["--seed", "101"]);
    let read = |d: &Path| fs::read_to_string(d.join("identity_contraction.json")).unwrap();
    assert_ne!(read(a.path()), read(b.path()));
}

#[test]
fn exit_codes_partition_outcomes() {
    let dir = tempfile::tempdir().unwrap();
    let ok = run_in(dir.path(), &[scenario("uniqueness.toml")], &[]);
    assert_eq!(ok.status.code(), Some(0));

    let violation = run_in(dir.path(), &[scenario("identity_contraction.toml")], &[]);
    assert_eq!(violation.status.code(), Some(2));

    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "id = \"bad\"\n[carrier]\nlo = 0\nhi = 1\n").unwrap();
    let input = run_in(dir.path(), std::slice::from_ref(&bad), &[]);
    assert_eq!(input.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&input.stderr).contains("missing field: mode"));

    let missing = run_in(dir.path(), &[dir.path().join("nope.toml")], &[]);
    assert_eq!(missing.status.code(), Some(3));

    let batch = run_in(
        dir.path(),
        &[
            scenario("uniqueness.toml"),
            scenario("identity_contraction.toml"),
        ],
        &[],
    );
    assert_eq!(batch.status.code(), Some(2));
    let batch = run_in(
        dir.path(),
        &[bad, scenario("identity_contraction.toml")],
        &[],
    );
    assert_eq!(batch.status.code(), Some(3));
}

#[test]
fn out_dir_env_var_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .arg("run")
        .arg(scenario("weak_compat.toml"))
        .env("VSMETRIC_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("weak_compat.json").exists());
}

#[test]
fn run_requires_a_file() {
    let out = bin().arg("run").output().unwrap();
    assert!(!out.status.success());
}
