//! End-to-end tests of the command line tool: output schemas, exit codes,
//! determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn resint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_resint"))
        .args(args)
        .output()
        .unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not json: {e}\n{}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(resint(&["--help"]).status.code(), Some(0));
    assert_eq!(resint(&["--version"]).status.code(), Some(0));
    assert_eq!(resint(&["bkm", "--help"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(resint(&["bkm"]).status.code(), Some(1));
    assert_eq!(resint(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(
        resint(&["oracle", "--ideal", "/nonexistent.json", "--i-max", "1", "--a-max", "1", "--b-max", "1"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn bkm_reports_the_resolution() {
    let out = resint(&["bkm", "--n", "3", "--m", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["n"], 3);
    assert_eq!(v["regularity"], serde_json::json!([0, 2]));
    let betti = v["betti"].as_array().unwrap();
    assert_eq!(betti.len(), 9);
    assert_eq!(v["positions"][4]["rank"], 6);
    assert_eq!(v["a_max"], serde_json::json!([0, 1, 2, 2, 2]));
    assert_eq!(v["b_max"], serde_json::json!([0, 3, 4, 4, 4]));
    assert!(v["diagonal"].is_null());
}

#[test]
fn bkm_rejects_m_below_n() {
    let out = resint(&["bkm", "--n", "4", "--m", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn bkm_certificates_need_all_three_flags() {
    let out = resint(&["bkm", "--n", "3", "--m", "4", "--p", "5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bkm_with_diagonal_certificates() {
    let out = resint(&[
        "bkm", "--n", "3", "--m", "4", "--p", "5", "--c", "1", "--e", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let d = &v["diagonal"];
    assert_eq!(d["koszul"]["verdict"]["verdict"], "certified");
    assert_eq!(d["koszul"]["bound"], 1);
    assert_eq!(d["cm"]["bound"], 3);
    assert!(d["cm"]["hypotheses"].as_array().unwrap().len() >= 1);
    assert!(d["per_shift"].as_array().unwrap().len() >= 5);
}

#[test]
fn diag_certifies_with_supplied_dimension() {
    let out = resint(&[
        "diag", "--n", "3", "--m", "4", "--p", "5", "--c", "5", "--e", "1", "--dim", "3",
        "--hilbert-through", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["cm"]["verdict"]["verdict"], "certified");
    assert_eq!(v["cm"]["bound"], 3);
    assert_eq!(v["hilbert"].as_array().unwrap().len(), 3);
    assert_eq!(v["hilbert"][0], 1);
}

#[test]
fn en_reports_terms_and_minors() {
    let out = resint(&[
        "en",
        "--phi",
        data("running_phi.json").to_str().unwrap(),
        "--check-through",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 3);
    assert_eq!(terms[1]["rank"], 4);
    assert_eq!(terms[2]["shifts"][0]["b"], 4);
    assert_eq!(v["minors"].as_array().unwrap().len(), 4);
    assert_eq!(v["compose_zero"], true);
    assert_eq!(v["exactness"]["nonzero"].as_array().unwrap().len(), 0);
}

#[test]
fn en_finds_homology_for_a_degenerate_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("degenerate.json");
    let file = serde_json::json!({
        "n": 2, "p": 3, "field": 32003,
        "matrix": {"rows": 2, "cols": 3, "entries": [
            ["y1", "y1", "y1"],
            ["y1", "y1", "y1"]
        ]}
    });
    std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
    let out = resint(&[
        "en",
        "--phi",
        path.to_str().unwrap(),
        "--check-through",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v = json_of(&out);
    assert!(!v["exactness"]["nonzero"].as_array().unwrap().is_empty());
}

#[test]
fn en_random_matrix_is_seed_deterministic() {
    let run = |seed: &str| {
        let out = resint(&["en", "--random-phi", "2,3,4", "--seed", seed]);
        assert_eq!(out.status.code(), Some(0));
        out.stdout
    };
    assert_eq!(run("7"), run("7"));
    assert_ne!(run("7"), run("8"));
    let v: Value = serde_json::from_slice(&run("7")).unwrap();
    assert_eq!(v["generated_phi"]["matrix"]["rows"], 2);
}

#[test]
fn oracle_matches_the_closed_form_on_the_small_instance() {
    let out = resint(&[
        "oracle",
        "--ideal",
        data("small_instance_ideal.json").to_str().unwrap(),
        "--i-max",
        "2",
        "--a-max",
        "1",
        "--b-max",
        "2",
        "--expect-bkm",
        "2,2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["comparison"]["matches"], true);
    assert_eq!(v["regularity"], serde_json::json!([0, 1]));
}

#[test]
fn oracle_field_flag_overrides_the_file() {
    let out = resint(&[
        "oracle",
        "--field",
        "101",
        "--ideal",
        data("small_instance_ideal.json").to_str().unwrap(),
        "--i-max",
        "1",
        "--a-max",
        "1",
        "--b-max",
        "2",
        "--expect-bkm",
        "2,2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["ring"]["field"], 101);
    assert_eq!(v["comparison"]["matches"], true);
}

#[test]
fn oracle_exit_two_on_mismatch() {
    let out = resint(&[
        "oracle",
        "--ideal",
        data("small_instance_ideal.json").to_str().unwrap(),
        "--i-max",
        "1",
        "--a-max",
        "1",
        "--b-max",
        "2",
        "--expect-bkm",
        "2,3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v = json_of(&out);
    assert_eq!(v["comparison"]["matches"], false);
    assert!(!v["comparison"]["differences"].as_array().unwrap().is_empty());
}

#[test]
fn rees_full_report() {
    let out = resint(&[
        "rees",
        "--presentation",
        data("running_presentation.json").to_str().unwrap(),
        "--c",
        "5",
        "--e",
        "1",
        "--powers",
        "1",
        "--check-through",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["generators"].as_array().unwrap().len(), 5);
    assert_eq!(v["ideal_generators"].as_array().unwrap().len(), 8);
    assert_eq!(v["certificates"]["cm"]["verdict"], "certified");
    assert_eq!(v["certificates"]["dim"], 3);
    assert!(!v["assumptions"].as_array().unwrap().is_empty());
    assert_eq!(v["exactness"]["nonzero"].as_array().unwrap().len(), 0);
    assert_eq!(v["powers"][0]["regularity"], 4);
    assert_eq!(v["powers"][0]["matches_bound"], true);
    assert_eq!(v["powers"][1]["degree_bound"], 8);
    assert!(v["powers"][1]["regularity"].is_null());
}

#[test]
fn rees_rejects_a_nonlinear_presentation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nonlinear.json");
    let file = serde_json::json!({
        "n": 2, "p": 2, "field": 32003,
        "matrix": {"rows": 2, "cols": 1, "entries": [["x1^2"], ["x2"]]}
    });
    std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
    let out = resint(&[
        "rees",
        "--presentation",
        path.to_str().unwrap(),
        "--c",
        "1",
        "--e",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn strand_labels_each_summand() {
    let out = resint(&[
        "strand",
        "--phi",
        data("running_phi.json").to_str().unwrap(),
        "--x-degree",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let terms = v["terms"].as_array().unwrap();
    assert!(!terms.is_empty());
    assert_eq!(terms[0]["rank"], 3);
    assert_eq!(v["labels"][0].as_array().unwrap().len(), 3);
}

#[test]
fn json_output_is_byte_deterministic() {
    let run = || {
        resint(&[
            "oracle",
            "--ideal",
            data("small_instance_ideal.json").to_str().unwrap(),
            "--i-max",
            "2",
            "--a-max",
            "1",
            "--b-max",
            "2",
        ])
        .stdout
    };
    assert_eq!(run(), run());
}

#[test]
fn table_format_renders_rows() {
    let out = resint(&["bkm", "--n", "2", "--m", "2", "--format", "table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("position 2: rank 2"));
    assert!(text.contains("regularity (0, 1)"));
    assert!(text.contains("mult"));
}
