use std::process::{Command, Output};

use repcurve::report::{CaseRecord, SuiteReport};
use repcurve::suites::{grid, Suite, Verdict, DEFAULT_M_GRID};
use repcurve_core::ff::FieldCtx;
use serde_json::{json, Value};

fn repcurve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repcurve"))
        .args(args)
        .env_remove("REPCURVE_SEED")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_module(dir: &tempfile::TempDir, name: &str, args: &[&str]) -> String {
    let path = dir.path().join(name).to_string_lossy().into_owned();
    let mut full = vec!["build"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &path]);
    let out = repcurve(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn build_vd() {
    let out = repcurve(&["build", "vd", "--p", "3", "--d", "5", "--beta", "0,1"]);
    assert_eq!(out.status.code(), Some(0));
    let m = stdout_json(&out);
    assert_eq!(m["dim"], 5);
    assert_eq!(m["labels"], json!(["w0", "w1", "w2", "w3", "w4"]));
    assert_eq!(m["modulus"], json!([1, 0, 1]));
}

#[test]
fn build_rejects_prime_field_beta() {
    let out = repcurve(&["build", "vd", "--p", "3", "--d", "5", "--beta", "1,0"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "PrimeFieldElement");
    assert!(out.stdout.is_empty());
}

#[test]
fn build_rejects_bad_modulus_and_missing_flags() {
    let out = repcurve(&["build", "regular", "--p", "3", "--modulus", "2,0,1"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "ReducibleModulus");

    let out = repcurve(&["build", "vd", "--p", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "Usage");

    assert_eq!(repcurve(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn build_dr_graded() {
    let out = repcurve(&["build", "dr", "--p", "3", "--m", "10", "--alpha", "0,1"]);
    assert_eq!(out.status.code(), Some(0));
    let g = stdout_json(&out);
    let pieces = g["pieces"].as_object().unwrap();
    assert_eq!(pieces.len(), 9);
    assert!(pieces.values().all(|m| m["dim"] == 8));

    let holo = stdout_json(&repcurve(&["build", "holo", "--p", "3", "--m", "10", "--beta", "0,1"]));
    let dims: Vec<u64> = (1..10)
        .map(|c| holo["pieces"][c.to_string()]["dim"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, [8, 7, 6, 5, 4, 3, 2, 1, 0]);
}

#[test]
fn small_modules() {
    for (kind, dim) in [("regular", 9), ("aug", 8), ("trivial", 1)] {
        let m = stdout_json(&repcurve(&["build", kind, "--p", "3"]));
        assert_eq!(m["dim"], dim, "{kind}");
    }
}

#[test]
fn query_iso_self_gives_identity() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_module(&dir, "a.json", &["vd", "--d", "5", "--beta", "0,1"]);
    let out = repcurve(&["query", "iso", &a, &a]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "YES");
    assert_eq!(v["method"], "identical");
    let w = v["witness"].as_array().unwrap();
    for (i, row) in w.iter().enumerate() {
        for (j, x) in row.as_array().unwrap().iter().enumerate() {
            assert_eq!(x, if i == j { "1,0" } else { "0,0" });
        }
    }
}

#[test]
fn query_iso_distinct_betas() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_module(&dir, "a.json", &["vd", "--d", "5", "--beta", "0,1"]);
    let b = write_module(&dir, "b.json", &["vd", "--d", "5", "--beta", "1,1"]);
    let v = stdout_json(&repcurve(&["query", "iso", &a, &b, "--seed", "3"]));
    assert_eq!(v["verdict"], "NO");
    assert_eq!(v["proven"], true);
    assert!(v["witness"].is_null());
    assert!(v.get("elapsed_ms").is_none());
}

#[test]
fn query_indec_vdr() {
    let dir = tempfile::tempdir().unwrap();
    let r = write_module(&dir, "r.json", &["vdr", "--d", "3", "--beta", "0,1"]);
    let v = stdout_json(&repcurve(&["query", "indec", &r]));
    assert_eq!(v["verdict"], "INDECOMPOSABLE");
    assert_eq!(v["certificate"]["tier"], "T3");

    let reg = write_module(&dir, "reg.json", &["vd", "--d", "9"]);
    let v = stdout_json(&repcurve(&["query", "indec", &reg]));
    assert_eq!(v["certificate"]["tier"], "T1");
}

#[test]
fn query_jordan_profile_ddeg() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_module(&dir, "a.json", &["vd", "--d", "5", "--beta", "0,1"]);
    let v = stdout_json(&repcurve(&["query", "jordan", &a]));
    assert_eq!(v["generic"], "[3,2]");
    assert_eq!(v["scan"].as_array().unwrap().len(), 10);

    let v = stdout_json(&repcurve(&["query", "profile", &a]));
    assert_eq!(v["profile"]["dim"], 5);
    assert_eq!(v["profile"]["fixed_dim"], 1);

    // ω_4 has digit sum 2
    let out = repcurve(&["query", "ddeg", &a, "--vector", "0,0;0,0;0,0;0,0;1,0"]);
    assert_eq!(stdout_json(&out)["ddeg"], 2);
    let out = repcurve(&["query", "ddeg", &a, "--vector", "0,0;1,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_identities() {
    let out = repcurve(&["verify", "identities", "--p", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    assert_eq!(r["summary"]["total"], 7);
    assert_eq!(r["summary"]["pass"], 7);
    assert_eq!(r["cases"][0]["id"], "identities/polynomial");
    assert_eq!(r["modulus"], json!([1, 0, 1]));
    assert!(r["cases"][0].get("ms").is_none());
}

#[test]
fn verify_classification_counts() {
    let r = stdout_json(&repcurve(&["verify", "classification", "--p", "3"]));
    let cases = r["cases"].as_array().unwrap();
    let vd: Vec<&Value> = cases
        .iter()
        .filter(|c| c["id"].as_str().unwrap().starts_with("classification/vd/"))
        .collect();
    let selfs = vd.iter().filter(|c| c["id"].as_str().unwrap().contains("/self/")).count();
    assert_eq!((vd.len() - selfs, selfs), (90, 36));
    assert!(cases.iter().all(|c| c["verdict"] == "pass"));
}

#[test]
fn verify_all_is_deterministic() {
    let a = repcurve(&["verify", "all", "--p", "3", "--seed", "7"]);
    let b = repcurve(&["verify", "all", "--p", "3", "--seed", "7", "--jobs", "1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    let env = Command::new(env!("CARGO_BIN_EXE_repcurve"))
        .args(["verify", "all", "--p", "3"])
        .env("REPCURVE_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(a.stdout, env.stdout);
}

#[test]
fn markdown_matches_json() {
    let j = stdout_json(&repcurve(&["verify", "jordan", "--p", "3"]));
    let md = String::from_utf8(repcurve(&["verify", "jordan", "--p", "3", "--format", "md"]).stdout).unwrap();
    let rows: Vec<(String, String)> = md
        .lines()
        .filter(|l| l.starts_with("| jordan/"))
        .map(|l| {
            let cells: Vec<&str> = l.split(" | ").collect();
            (cells[0].trim_start_matches("| ").to_string(), cells[1].to_string())
        })
        .collect();
    let cases = j["cases"].as_array().unwrap();
    assert_eq!(rows.len(), cases.len());
    for ((id, verdict), c) in rows.iter().zip(cases) {
        assert_eq!(c["id"], id.as_str());
        assert_eq!(c["verdict"], verdict.as_str());
    }
    assert!(cases.iter().any(|c| c["verdict"] == "report-only"));
}

#[test]
fn timings_are_opt_in() {
    let r = stdout_json(&repcurve(&["verify", "identities", "--timings"]));
    assert!(r["cases"].as_array().unwrap().iter().all(|c| c["ms"].is_u64()));
}

#[test]
fn cases_lists_the_verified_ids() {
    let listed = stdout_json(&repcurve(&["cases", "hodge", "--format", "json"]));
    let run = stdout_json(&repcurve(&["verify", "hodge"]));
    let ids = |v: &Value| -> Vec<String> {
        v["cases"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c["id"].as_str().unwrap().to_string())
            .collect()
    };
    assert_eq!(ids(&listed), ids(&run));
    assert!(listed["cases"][0]["claim"].as_str().unwrap().contains("quotient"));
}

#[test]
fn failures_map_to_exit_one() {
    let ctx = FieldCtx::with_default_modulus(3, 2).unwrap();
    let g = grid(&ctx, &DEFAULT_M_GRID, ctx.generator()).unwrap();
    let record = |verdict| CaseRecord {
        id: "x".into(),
        verdict,
        certificate: Value::Null,
        ms: None,
    };
    let ok = SuiteReport::new(Suite::Holo, &ctx, 0, 64, g.clone(), vec![record(Verdict::Pass), record(Verdict::ReportOnly)]);
    assert_eq!(ok.exit_code(), 0);
    let bad = SuiteReport::new(Suite::Holo, &ctx, 0, 64, g, vec![record(Verdict::Pass), record(Verdict::Fail)]);
    assert_eq!(bad.exit_code(), 1);
    assert_eq!(bad.summary.fail, 1);
}

#[test]
fn in_process_run_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = repcurve::run(["repcurve", "verify", "identities"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(out, repcurve(&["verify", "identities"]).stdout);
}
