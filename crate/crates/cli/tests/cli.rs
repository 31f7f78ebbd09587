use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut full = vec!["coset-fusion"];
    full.extend_from_slice(args);
    let code = coset_fusion_cli::run(full, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

fn binary(args: &[&str], dir: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_coset-fusion"));
    cmd.args(args).env_remove(coset_fusion_cli::OUT_DIR_ENV);
    if let Some(d) = dir {
        cmd.env(coset_fusion_cli::OUT_DIR_ENV, d);
    }
    cmd.output().unwrap()
}

#[test]
fn weights_table_sizes() {
    for (alg, level, rows) in [("su2", "2", 3), ("su3", "2", 6), ("su2", "8", 9)] {
        let doc = json(&["weights", "--algebra", alg, "--level", level]);
        assert_eq!(doc["command"], "weights");
        assert_eq!(doc["result"]["weights"].as_array().unwrap().len(), rows);
    }
    let (_, csv, _) = run(&[
        "weights",
        "--algebra",
        "su2",
        "--level",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(csv.lines().count(), 4);
    assert!(
        csv.starts_with("labels,color,conformal_weight,quantum_dimension\n0,0,0,1.00000000000\n")
    );
}

#[test]
fn su2_weights_have_exact_conformal_weights() {
    let doc = json(&["weights", "--algebra", "su2", "--level", "2"]);
    let h: Vec<&str> = doc["result"]["weights"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| w["conformal_weight"].as_str().unwrap())
        .collect();
    assert_eq!(h, ["0", "3/16", "1/2"]);
}

#[test]
fn fuse_products() {
    for (args, text) in [
        (["su2", "2", "1", "1"], "0 + 2"),
        (["su2", "3", "2", "2"], "0 + 2"),
        (["su2", "1", "0", "1"], "1"),
        (["su2", "8", "2", "2"], "0 + 2 + 4"),
        (["su3", "1", "1,0", "1,0"], "(0,1)"),
        (["su3", "2", "1,0", "0,1"], "(0,0) + (1,1)"),
    ] {
        let mut full = vec!["fuse"];
        full.extend_from_slice(&args);
        let doc = json(&full);
        assert_eq!(doc["result"]["text"], text, "{args:?}");
        assert_eq!(doc["reports"][0]["passed"], true);
    }
}

#[test]
fn su3_adjoint_square() {
    let doc = json(&["fuse", "su3", "3", "1,1", "1,1"]);
    assert_eq!(doc["result"]["text"], "(0,0) + (0,3) + 2*(1,1) + (3,0)");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["bogus"][..],
        &["weights", "--algebra", "so3", "--level", "2"],
        &["weights", "--algebra", "su2", "--level", "0"],
        &["fuse", "su2", "2", "3", "0"],
        &["fuse", "su2", "2", "1"],
        &["branch", "2", "1", "--sector", "0/0/0"],
        &["branch", "--sector", "0/0/0"],
        &[
            "weights",
            "--algebra",
            "su2",
            "--level",
            "2",
            "--beta-floor",
            "0",
        ],
    ] {
        let (code, out, err) = run(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty(), "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_0() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("coset-ring"));
}

#[test]
fn ising_coset_ring() {
    let doc = json(&["coset-ring", "2", "1", "1"]);
    assert_eq!(doc["result"]["exp_size"], 6);
    assert_eq!(doc["result"]["orbits"].as_array().unwrap().len(), 3);
    assert!(doc["reports"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["passed"] == true));
}

#[test]
fn w3_coset_ring() {
    let doc = json(&["coset-ring", "3", "1", "1"]);
    assert_eq!(doc["result"]["exp_size"], 18);
    let orbits = doc["result"]["orbits"].as_array().unwrap();
    assert_eq!(orbits.len(), 6);
    let phi = orbits
        .iter()
        .filter(|o| o["dimension"] == "1.61803398875")
        .count();
    assert_eq!(phi, 3);
}

#[test]
fn non_faithful_coset_is_refused() {
    let (code, out, err) = run(&["coset-ring", "2", "2", "2"]);
    assert_eq!(code, 1);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["result"]["error"], "NotFaithful");
    assert_eq!(
        doc["result"]["fixed_points"][0]["diagonal"],
        serde_json::json!([2])
    );
    assert_eq!(doc["reports"][0]["passed"], false);
    assert!(err.contains("fixed sectors: (1, 1; 2)"));
}

#[test]
fn verify_suites_pass() {
    for suite in ["kw", "maverick", "coset", "parafermion", "index"] {
        let doc = json(&["verify", suite]);
        assert_eq!(doc["result"]["suite"], suite);
        assert_eq!(doc["result"]["checks"], doc["result"]["passed"], "{suite}");
    }
    let doc = json(&["verify", "kw", "--n", "3", "--m1", "2", "--m2", "1"]);
    assert_eq!(doc["reports"][0]["passed"], true);
}

#[test]
fn maverick_echoes_relations() {
    let doc = json(&["verify", "maverick"]);
    let r = &doc["result"];
    assert!(r.to_string().contains("1.61803398875"), "{r}");
}

#[test]
fn tiny_tolerance_fails_with_exit_1() {
    let (code, _, err) = run(&["verify", "unitarity", "--tolerance-unitary", "1e-30"]);
    assert_eq!(code, 1);
    assert!(err.contains("check failed: s-matrix-unitarity"));
}

#[test]
fn ising_branching_functions() {
    let doc = json(&[
        "branch", "2", "1", "1", "--sector", "0/0/0", "--cutoff", "6",
    ]);
    assert_eq!(
        doc["result"]["coefficients"],
        serde_json::json!([1, 0, 1, 1, 2, 2, 3])
    );
    assert_eq!(doc["result"]["vacuum"], true);
    assert_eq!(doc["result"]["energy"], "0");
    let eps = json(&[
        "branch", "2", "1", "1", "--sector", "1/1/0", "--cutoff", "6",
    ]);
    assert_eq!(eps["result"]["energy"], "1/2");
    let sigma = json(&[
        "branch", "2", "1", "1", "--sector", "0/1/1", "--cutoff", "6",
    ]);
    assert_eq!(sigma["result"]["energy"], "1/16");
    let zero = json(&[
        "branch", "2", "1", "1", "--sector", "0/0/1", "--cutoff", "4",
    ]);
    assert_eq!(
        zero["result"]["coefficients"],
        serde_json::json!([0, 0, 0, 0, 0])
    );
    assert!(zero["result"]["note"].is_string());
}

#[test]
fn maverick_branch_reaches_energy_zero() {
    let doc = json(&["branch", "--maverick", "--sector", "1,1/4", "--cutoff", "4"]);
    assert_eq!(doc["result"]["energy"], "0");
    assert_eq!(doc["result"]["coefficients"][0], 1);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify", "all"][..],
        &["coset-ring", "3", "1", "1"],
        &[
            "branch",
            "3",
            "1",
            "1",
            "--sector",
            "1,0/0,1/0,0",
            "--cutoff",
            "5",
        ],
    ] {
        let a = binary(args, None);
        let b = binary(args, None);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn timings_only_on_request() {
    let doc = json(&["verify", "kw"]);
    assert!(doc["reports"][0].get("runtime_ms").is_none());
    let doc = json(&["verify", "kw", "--timings"]);
    assert!(doc["reports"][0]["runtime_ms"].is_string());
}

#[test]
fn config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    std::fs::write(&path, "# desk run\ngrade_cutoff = 5\noutput_format = csv\n").unwrap();
    let p = path.to_str().unwrap();
    let (code, out, _) = run(&["--config", p, "branch", "2", "1", "1", "--sector", "0/0/0"]);
    assert_eq!(code, 0);
    assert_eq!(out, "grade,coefficient\n0,1\n1,0\n2,1\n3,1\n4,2\n5,2\n");
    let doc = json(&[
        "--config",
        p,
        "--format",
        "json",
        "--grade-cutoff",
        "3",
        "weights",
        "--algebra",
        "su2",
        "--level",
        "1",
    ]);
    assert_eq!(doc["config"]["grade_cutoff"], 3);
    assert_eq!(doc["config"]["output_format"], "json");

    std::fs::write(&path, "colour = blue\n").unwrap();
    assert_eq!(run(&["--config", p, "verify", "kw"]).0, 2);
    assert_eq!(run(&["--config", "/nonexistent/conf", "verify", "kw"]).0, 2);
}

#[test]
fn out_file_and_directory_variable() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("nested/weights.json");
    let o = binary(
        &[
            "weights",
            "--algebra",
            "su2",
            "--level",
            "2",
            "--out",
            target.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(doc["result"]["count"], 3);

    let o = binary(
        &[
            "weights",
            "--algebra",
            "su2",
            "--level",
            "3",
            "--out",
            "rel.json",
        ],
        Some(dir.path()),
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("rel.json").exists());
}

#[test]
fn table_format() {
    let (code, out, _) = run(&["--format", "table", "verify", "kw"]);
    assert_eq!(code, 0);
    assert!(out.contains("[PASS] kw-identity"));
}
