use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use compliant_cli::{load_config, RunConfig};

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn compliant(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_compliant")).args(args).output().unwrap()
}

fn solve(config: &Path, out: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["solve", "--config", config.to_str().unwrap(), "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    compliant(&args)
}

fn files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap())
        })
        .collect();
    v.sort();
    v
}

#[test]
fn repeated_runs_are_byte_identical() {
    for name in ["case_i.json", "case_ii.json"] {
        let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        assert!(solve(&configs().join(name), a.path(), &[]).status.success());
        assert!(solve(&configs().join(name), b.path(), &[]).status.success());
        assert_eq!(files(a.path()), files(b.path()), "{name}");
    }
}

#[test]
fn format_selection_limits_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = solve(&configs().join("case_i.json"), dir.path(), &["--format", "csv"]);
    assert!(out.status.success());
    let names: Vec<String> = files(dir.path()).into_iter().map(|(n, _)| n).collect();
    assert_eq!(names, ["solutions.csv"]);
}

#[test]
fn summary_names_the_counts() {
    let dir = tempfile::tempdir().unwrap();
    let out = solve(&configs().join("case_i.json"), dir.path(), &[]);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("4 candidates, 4 accepted, 2 real"), "{stdout}");
}

fn write_config(dir: &Path, edit: impl FnOnce(&mut RunConfig)) -> PathBuf {
    let mut c = load_config(&configs().join("case_i.json")).unwrap();
    edit(&mut c);
    let path = dir.join("config.json");
    fs::write(&path, c.to_json()).unwrap();
    path
}

#[test]
fn invalid_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad_k = write_config(dir.path(), |c| c.mechanism.k[1] = 0.0);
    let out = solve(&bad_k, &dir.path().join("out"), &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`k`"));

    let garbage = dir.path().join("garbage.json");
    fs::write(&garbage, "{ not json").unwrap();
    assert_eq!(solve(&garbage, &dir.path().join("out"), &[]).status.code(), Some(2));

    let wrong_case = write_config(dir.path(), |_| {});
    let out = solve(&wrong_case, &dir.path().join("out"), &["--case", "one-nonzero"]);
    assert_eq!(out.status.code(), Some(2));

    let out = solve(&wrong_case, &dir.path().join("out"), &["--tol-acc", "-1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unsupported_pattern_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_config(dir.path(), |c| c.mechanism.free_lengths = [0.0, 0.5, 0.0]);
    let out = solve(&path, &dir.path().join("out"), &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("free_lengths"));
}

#[test]
fn shipped_configs_round_trip() {
    for name in ["case_i.json", "case_ii.json"] {
        let c = load_config(&configs().join(name)).unwrap();
        assert_eq!(RunConfig::from_json(&c.to_json()).unwrap(), c);
    }
}

#[test]
fn report_json_carries_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    assert!(solve(&configs().join("case_ii.json"), dir.path(), &["--format", "json"]).status.success());
    let v: serde_json::Value = serde_json::from_slice(&fs::read(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(v["case"], "one-nonzero");
    assert_eq!(v["case_ii"]["resultant"]["effective_degree"], 48);
    assert_eq!(v["solutions"].as_array().unwrap().len(), 48);
}
