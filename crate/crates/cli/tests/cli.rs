//! End-to-end tests that drive the compiled binary: exit codes, the replay
//! round trip, JSON report shapes, and byte-level determinism.

use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_centroid-bm");

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .current_dir(dir)
        .env_remove("CENTROID_BM_THREADS")
        .output()
        .expect("binary should launch")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout should be UTF-8")
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr should be UTF-8")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("process should exit normally")
}

fn parse_json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout_str(out)).expect("stdout should be a JSON document")
}

fn write_polygon(dir: &Path, name: &str, vertices: &[[&str; 2]]) -> std::path::PathBuf {
    let path = dir.join(name);
    let doc = serde_json::json!({ "vertices": vertices });
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    path
}

#[test]
fn certify_writes_a_replayable_ledger() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["certify", "--output", "ledger.json"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr_str(&out));

    let text = stdout_str(&out);
    for name in [
        "witness",
        "case1_cover",
        "case2_cover",
        "subcase_1_2",
        "subcase_2_2",
    ] {
        assert!(
            text.contains(&format!("entry {name}: pass")),
            "missing pass line for {name} in: {text}"
        );
    }
    assert!(text.lines().last().unwrap().ends_with(": pass"));

    let ledger_path = dir.path().join("ledger.json");
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&ledger_path).unwrap()).unwrap();
    assert_eq!(doc["entries"].as_array().unwrap().len(), 5);
    assert_eq!(doc["verdict"], "pass");
    assert!(doc["version"].is_string());
    assert_eq!(doc["config"]["command"], "certify");
    assert_eq!(doc["config"]["grid_step"], "1/64");

    let replay = run_in(dir.path(), &["replay", "ledger.json"]);
    assert_eq!(exit_code(&replay), 0, "stderr: {}", stderr_str(&replay));
    assert!(stdout_str(&replay).contains("replay: pass (5 entries verified)"));
}

#[test]
fn tampered_certification_fails_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["certify", "--tamper-case1", "--output", "bad.json"],
    );
    assert_eq!(exit_code(&out), 1);
    assert!(stdout_str(&out).contains("entry case1_cover: fail"));
    assert!(stderr_str(&out).contains("case1_cover"));
}

#[test]
fn replay_detects_a_corrupted_ledger() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["certify", "--output", "ledger.json"]);
    assert_eq!(exit_code(&out), 0);

    let path = dir.path().join("ledger.json");
    let mut doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    doc["entries"][0]["certificate"]["inputs"]["first"][0][0] = serde_json::json!("2/1");
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();

    let replay = run_in(dir.path(), &["replay", "ledger.json"]);
    assert_eq!(exit_code(&replay), 1);
    assert!(stdout_str(&replay).contains("replay: fail"));
}

#[test]
fn replay_rejects_malformed_input_as_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("garbage.json"), "not json at all").unwrap();
    let out = run_in(dir.path(), &["replay", "garbage.json"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr_str(&out).contains("malformed ledger"));

    let missing = run_in(dir.path(), &["replay", "no_such_file.json"]);
    assert_eq!(exit_code(&missing), 2);
}

#[test]
fn oracle_search_reports_the_exact_minimum() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["oracle-search", "--grid", "4"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr_str(&out));
    let doc = parse_json(&out);
    assert_eq!(doc["min_gauge"], "5/2");
    assert_eq!(doc["config"]["grid"], 4);
    assert_eq!(doc["witness_vertices"].as_array().unwrap().len(), 3);
}

#[test]
fn claim_scan_defaults_to_the_unit_square() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["claim"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr_str(&out));
    let doc = parse_json(&out);
    assert_eq!(doc["max_gauge"], "3/1");
    assert_eq!(doc["config"]["body"], "unit-square");
    assert_eq!(doc["config"]["resolution"], 8);
    assert!(doc["samples"].as_u64().unwrap() > 0);
    assert_eq!(doc["witness_triangle"].as_array().unwrap().len(), 3);
}

#[test]
fn claim_scan_rejects_an_asymmetric_body() {
    let dir = tempfile::tempdir().unwrap();
    let tri = write_polygon(
        dir.path(),
        "tri.json",
        &[["1", "0"], ["-1/2", "1"], ["-1/2", "-1"]],
    );
    let out = run_in(dir.path(), &["claim", "--body", tri.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn conjecture_scan_accepts_a_polygon_file() {
    let dir = tempfile::tempdir().unwrap();
    let hex = write_polygon(
        dir.path(),
        "hex.json",
        &[
            ["2", "0"],
            ["1", "2"],
            ["-1", "2"],
            ["-2", "0"],
            ["-1", "-2"],
            ["1", "-2"],
        ],
    );
    let out = run_in(
        dir.path(),
        &["conjecture", "--body", hex.to_str().unwrap(), "--resolution", "6"],
    );
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr_str(&out));
    let doc = parse_json(&out);
    assert_eq!(doc["config"]["command"], "conjecture");
    assert_eq!(doc["body"].as_array().unwrap().len(), 6);
    let parts: Vec<i64> = doc["max_gauge"]
        .as_str()
        .unwrap()
        .split('/')
        .map(|s| s.parse().unwrap())
        .collect();
    assert!(parts[0] <= 4 * parts[1], "gauge above 4: {}", doc["max_gauge"]);
}

#[test]
fn distance_reports_the_known_value_for_square_and_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let square = write_polygon(
        dir.path(),
        "square.json",
        &[["1", "1"], ["-1", "1"], ["-1", "-1"], ["1", "-1"]],
    );
    let tri = write_polygon(
        dir.path(),
        "tri.json",
        &[["1", "0"], ["-1/2", "1"], ["-1/2", "-1"]],
    );
    let out = run_in(
        dir.path(),
        &[
            "distance",
            square.to_str().unwrap(),
            tri.to_str().unwrap(),
            "--coarse-grid-steps",
            "8",
            "--refinement-rounds",
            "12",
            "--output",
            "report.json",
        ],
    );
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr_str(&out));
    let doc = parse_json(&out);
    let lambda = doc["lambda_hat"].as_f64().unwrap();
    assert!((lambda - 2.5).abs() < 0.05, "lambda_hat = {lambda}");
    assert!(doc["best_map"].is_object());
    assert!(doc["exact_gauges"]["target_in_image"].is_string());
    assert_eq!(doc["config"]["coarse_grid_steps"], 8);

    let mirrored: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap())
            .unwrap();
    assert_eq!(mirrored, doc);
}

#[test]
fn cube_simplex_reports_gauge_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["cube-simplex"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr_str(&out));
    let doc = parse_json(&out);
    assert_eq!(doc["max_gauge"], "3/1");
    assert_eq!(doc["samples"], 8);
    assert_eq!(doc["body"].as_array().unwrap().len(), 4);
    assert!(doc["witness_triangle"].is_null());
}

#[test]
fn figures_writes_six_svg_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["figures", "--outdir", "figs"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr_str(&out));
    let doc = parse_json(&out);
    assert_eq!(doc["files"].as_array().unwrap().len(), 6);
    for i in 1..=6 {
        let path = dir.path().join("figs").join(format!("fig{i}.svg"));
        let data = std::fs::read_to_string(&path).expect("figure file should exist");
        assert!(data.contains("<svg"), "{} is not an SVG", path.display());
    }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let first = run_in(dir.path(), &["oracle-search", "--grid", "3"]);
    let second = run_in(dir.path(), &["oracle-search", "--grid", "3"]);
    assert_eq!(exit_code(&first), 0);
    assert_eq!(first.stdout, second.stdout);

    let c1 = run_in(dir.path(), &["certify", "--output", "a.json"]);
    let c2 = run_in(dir.path(), &["certify", "--output", "b.json"]);
    assert_eq!(exit_code(&c1), 0);
    assert_eq!(exit_code(&c2), 0);
    let a = std::fs::read(dir.path().join("a.json")).unwrap();
    let b = std::fs::read(dir.path().join("b.json")).unwrap();
    assert_ne!(a, b, "config block should record the output path");
    let mut da: serde_json::Value = serde_json::from_slice(&a).unwrap();
    let mut db: serde_json::Value = serde_json::from_slice(&b).unwrap();
    da["config"]["output"] = serde_json::json!("");
    db["config"]["output"] = serde_json::json!("");
    assert_eq!(da, db);
}

#[test]
fn unknown_flags_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["claim", "--no-such-flag"]);
    assert_eq!(exit_code(&out), 2);

    let bad_env = Command::new(BIN)
        .args(["claim"])
        .current_dir(dir.path())
        .env("CENTROID_BM_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad_env.status.code().unwrap(), 2);
}
