//! End-to-end tests of the `flab` binary: construct/inspect round trips,
//! fusion and classification on files, suite exit codes, cap handling, and
//! input-error reporting.

use std::path::Path;
use std::process::{Command, Output};

fn flab() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_flab"));
    cmd.env_remove("FLAB_CAP");
    cmd
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("flab runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    assert!(output.status.success(), "stderr: {}", String::from_utf8_lossy(&output.stderr));
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

fn write_group(dir: &Path, name: &str, args: &[&str]) -> std::path::PathBuf {
    let output = run(flab().args(args));
    assert!(output.status.success(), "stderr: {}", String::from_utf8_lossy(&output.stderr));
    let path = dir.join(name);
    std::fs::write(&path, &output.stdout).unwrap();
    path
}

#[test]
fn construct_then_inspect() {
    let dir = tempfile::tempdir().unwrap();
    let cyclic = write_group(dir.path(), "c9.json", &["construct", "cyclic", "--p", "3", "--r", "2"]);
    let order = stdout_json(&run(
        flab().args(["inspect", "--group", cyclic.to_str().unwrap(), "--what", "order"]),
    ));
    assert_eq!(order["order"], 9);
    let exponent = stdout_json(&run(
        flab().args(["inspect", "--group", cyclic.to_str().unwrap(), "--what", "exponent"]),
    ));
    assert_eq!(exponent["exponent"], 9);

    let wreath =
        write_group(dir.path(), "w.json", &["construct", "wreath", "--p", "3", "--depth", "2"]);
    let center = stdout_json(&run(
        flab().args(["inspect", "--group", wreath.to_str().unwrap(), "--what", "center"]),
    ));
    assert_eq!(center["order"], 3);
    let classes = stdout_json(&run(
        flab().args(["inspect", "--group", wreath.to_str().unwrap(), "--what", "classes"]),
    ));
    assert_eq!(classes["count"], 17);
}

#[test]
fn affine_pipeline_fusion_and_classify() {
    let dir = tempfile::tempdir().unwrap();
    let q8 = write_group(dir.path(), "q8.json", &["construct", "q8-matrices"]);

    let verdict = stdout_json(&run(flab().args(["classify", "--group", q8.to_str().unwrap()])));
    assert_eq!(verdict["label"], "gamma-l1");

    let affine = write_group(
        dir.path(),
        "affine.json",
        &["construct", "semidirect", "--p", "3", "--n", "2", "--mats", q8.to_str().unwrap()],
    );
    let report = stdout_json(&run(flab().args([
        "fusion",
        "--ambient",
        affine.to_str().unwrap(),
        "--sylow",
        "3",
    ])));
    assert_eq!(report["transitive"], true);
    assert_eq!(report["class_count"], 1);
    assert_eq!(report["is_sylow"], true);
}

#[test]
fn construct_out_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let wreath = dir.path().join("w.json");
    let output = run(flab().args([
        "construct",
        "wreath",
        "--p",
        "3",
        "--depth",
        "2",
        "--out",
        wreath.to_str().unwrap(),
    ]));
    assert!(output.status.success(), "stderr: {}", String::from_utf8_lossy(&output.stderr));
    assert!(output.stdout.is_empty());
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&wreath).unwrap()).unwrap();
    assert_eq!(value["kind"], "perm");
    assert_eq!(value["degree"], 9);

    // The degree-9 wreath group is a Sylow subgroup of S_9 whose fusion
    // inside S_9 is not transitive.
    let dir_path = dir.path();
    let s9 = write_group(dir_path, "s9.json", &["construct", "symmetric", "--n", "9"]);
    let report = stdout_json(&run(flab().args([
        "fusion",
        "--group",
        wreath.to_str().unwrap(),
        "--ambient",
        s9.to_str().unwrap(),
    ])));
    assert_eq!(report["transitive"], false);
}

#[test]
fn fusion_with_explicit_subgroup() {
    let dir = tempfile::tempdir().unwrap();
    let s3 = write_group(dir.path(), "s3.json", &["construct", "symmetric", "--n", "3"]);
    let c3 = write_group(dir.path(), "c3.json", &["construct", "cyclic", "--p", "3"]);
    let report = stdout_json(&run(flab().args([
        "fusion",
        "--ambient",
        s3.to_str().unwrap(),
        "--group",
        c3.to_str().unwrap(),
    ])));
    assert_eq!(report["transitive"], true);
    assert_eq!(report["class_count"], 1);
}

#[test]
fn malformed_input_reports_path_and_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"kind":"perm","degree":3,"generators":[[[0,9]]]}"#).unwrap();
    let output = run(flab().args(["inspect", "--group", bad.to_str().unwrap(), "--what", "order"]));
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("generators[0][0][1]"), "stderr: {stderr}");
}

#[test]
fn cap_flag_and_env() {
    let dir = tempfile::tempdir().unwrap();
    let wreath =
        write_group(dir.path(), "w.json", &["construct", "wreath", "--p", "3", "--depth", "2"]);
    let path = wreath.to_str().unwrap();

    // Enumerating 81 elements under a cap of 10 must fail loudly with code 3.
    let output = run(flab()
        .env("FLAB_CAP", "10")
        .args(["inspect", "--group", path, "--what", "classes"]));
    assert_eq!(output.status.code(), Some(3));

    // The --cap flag beats the environment.
    let output = run(flab()
        .env("FLAB_CAP", "10")
        .args(["inspect", "--group", path, "--what", "classes", "--cap", "1000"]));
    assert!(output.status.success());

    let output = run(flab().env("FLAB_CAP", "not-a-number").args([
        "inspect",
        "--group",
        path,
        "--what",
        "order",
    ]));
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn check_pass_json_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let output = run(flab().args([
        "check",
        "--suite",
        "symmetric",
        "--n-list",
        "3,4,9",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]));
    assert!(output.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["schema"], "flab/check-report/v1");
    assert_eq!(report["suite"], "symmetric");
    assert_eq!(report["passed"], true);
}

#[test]
fn check_failure_exits_1() {
    // Handing the 2x2 quaternion generators to the item that expects the
    // six-dimensional module must fail that item and the suite.
    let dir = tempfile::tempdir().unwrap();
    let q8 = write_group(dir.path(), "q8.json", &["construct", "q8-matrices"]);
    let output = run(flab().args([
        "check",
        "--suite",
        "prop2_1",
        "--sl213-gens",
        q8.to_str().unwrap(),
    ]));
    assert_eq!(output.status.code(), Some(1));
    let text = String::from_utf8_lossy(&output.stdout);
    assert!(text.contains("FAIL sl2_13"), "stdout: {text}");
}

#[test]
fn check_usage_errors_exit_2() {
    let output = run(flab().args(["check", "--suite", "lemma5_1"]));
    assert_eq!(output.status.code(), Some(2));
    let output = run(flab().args(["check", "--suite", "prop2_3", "--p", "7"]));
    assert_eq!(output.status.code(), Some(2));
    // Unknown subcommand: clap's own usage error.
    let output = run(flab().args(["frobnicate"]));
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn constructors_cover_named_families() {
    let dir = tempfile::tempdir().unwrap();
    for (name, args, expected_order) in [
        ("ea", vec!["construct", "elementary-abelian", "--p", "3", "--r", "2"], 9u64),
        ("es", vec!["construct", "extraspecial", "--p", "3"], 27),
        ("ms", vec!["construct", "monomial-sylow", "--p", "3", "--q", "4"], 27),
        ("ss", vec!["construct", "sylow-symmetric", "--n", "9", "--p", "3"], 81),
        ("s4", vec!["construct", "symmetric", "--n", "4"], 24),
        ("wr", vec!["construct", "wreath", "--p", "2", "--depth", "1", "--r", "2"], 32),
    ] {
        let path = write_group(dir.path(), &format!("{name}.json"), &args);
        let order = stdout_json(&run(
            flab().args(["inspect", "--group", path.to_str().unwrap(), "--what", "order"]),
        ));
        assert_eq!(order["order"], expected_order, "group {name}");
    }

    let a = write_group(dir.path(), "a.json", &["construct", "cyclic", "--p", "2"]);
    let b = write_group(dir.path(), "b.json", &["construct", "cyclic", "--p", "3"]);
    let inputs = format!("{},{}", a.to_str().unwrap(), b.to_str().unwrap());
    let product = write_group(
        dir.path(),
        "prod.json",
        &["construct", "direct-product", "--inputs", &inputs],
    );
    let order = stdout_json(&run(
        flab().args(["inspect", "--group", product.to_str().unwrap(), "--what", "order"]),
    ));
    assert_eq!(order["order"], 6);

    let wreath_of = write_group(
        dir.path(),
        "wof.json",
        &["construct", "wreath-of", "--input", b.to_str().unwrap(), "--p", "3"],
    );
    let order = stdout_json(&run(
        flab().args(["inspect", "--group", wreath_of.to_str().unwrap(), "--what", "order"]),
    ));
    assert_eq!(order["order"], 81);
}
