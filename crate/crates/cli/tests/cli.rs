use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use loggen_core::corpus::write_dataset;
use loggen_core::synth::memorization_corpus;
use serde_json::Value;
use tempfile::TempDir;

const METHOD: &str = "public void save(Order order) {\n    validate(order);\n    if (order.isEmpty()) {\n        return;\n    }\n    repository.store(order);\n}\n";

fn loggen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loggen"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn error_line(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    let line = stderr.lines().last().unwrap();
    serde_json::from_str(line).unwrap()
}

/// A dataset and a baseline model trained on it.
fn trained(dir: &TempDir) -> (String, String) {
    let dataset = dir.path().join("data.jsonl");
    write_dataset(&dataset, &memorization_corpus(8, 12)).unwrap();
    let model = dir.path().join("model.json");
    let out = loggen(&[
        "train-baseline",
        "--corpus",
        p(&dataset),
        "--out",
        p(&model),
    ]);
    assert!(out.status.success());
    (
        p(&dataset).to_string(),
        format!("baseline:{}", model.display()),
    )
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(loggen(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(loggen(&["split"]).status.code(), Some(2));
    assert_eq!(
        loggen(&["split", "x.java", "--m", "many"]).status.code(),
        Some(2)
    );
}

#[test]
fn missing_file_is_a_json_error() {
    let err = error_line(&loggen(&["tokenize", "/nonexistent/Foo.java"]));
    assert_eq!(err["error"], "io");
    assert!(err["message"]
        .as_str()
        .unwrap()
        .contains("/nonexistent/Foo.java"));
}

#[test]
fn lex_error_reported() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("Bad.java");
    fs::write(&f, "void f() { String s = \"open; }").unwrap();
    assert_eq!(error_line(&loggen(&["tokenize", p(&f)]))["error"], "lex");
}

#[test]
fn tokenize_json_spans_cover_source() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("M.java");
    fs::write(&f, METHOD).unwrap();
    let tokens = stdout_json(&loggen(&["--json", "tokenize", p(&f)]));
    let tokens = tokens.as_array().unwrap();
    assert_eq!(tokens[0]["text"], "public");
    let last = tokens.last().unwrap();
    assert_eq!(last["text"], "}");
    assert_eq!(
        last["span"]["end"].as_u64().unwrap() as usize,
        METHOD.len() - 1
    );
}

#[test]
fn bad_policy_and_bad_config() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("M.java");
    fs::write(&f, METHOD).unwrap();
    assert_eq!(
        error_line(&loggen(&["split", p(&f), "--policy", "halve"]))["error"],
        "config"
    );
    assert_eq!(
        error_line(&loggen(&["split", p(&f), "--m", "600"]))["error"],
        "config"
    );

    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"beams": 3}"#).unwrap();
    assert_eq!(
        error_line(&loggen(&["--config", p(&cfg), "split", p(&f)]))["error"],
        "config"
    );
}

#[test]
fn flags_override_config_file() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("M.java");
    fs::write(&f, METHOD).unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(
        &cfg,
        r#"{"max_input_len": 40, "max_chunk_len": 30, "policy": "truncate-split"}"#,
    )
    .unwrap();

    let plan = stdout_json(&loggen(&["--json", "--config", p(&cfg), "split", p(&f)]));
    assert_eq!(plan["config"]["max_input_len"], 40);
    assert_eq!(plan["config"]["policy"], "truncate-split");

    let plan = stdout_json(&loggen(&[
        "--json",
        "--config",
        p(&cfg),
        "split",
        p(&f),
        "--L",
        "20",
        "--m",
        "10",
    ]));
    assert_eq!(plan["config"]["max_input_len"], 20);
    assert_eq!(plan["config"]["max_chunk_len"], 10);
    assert_eq!(plan["config"]["policy"], "truncate-split");
    assert!(plan["plan"]["chunks"].as_array().unwrap().len() >= 2);
}

#[test]
fn run_reports_insertion() {
    let dir = TempDir::new().unwrap();
    let (_, backend) = trained(&dir);
    let f = dir.path().join("M.java");
    fs::write(&f, METHOD).unwrap();
    let out_file = dir.path().join("Out.java");
    let r = stdout_json(&loggen(&[
        "run",
        "--method",
        p(&f),
        "--backend",
        &backend,
        "--output",
        p(&out_file),
    ]));
    for key in [
        "position",
        "probability",
        "statement",
        "level",
        "candidates",
        "timings",
        "inserted_range",
        "output",
    ] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    let output = r["output"].as_str().unwrap();
    assert_eq!(fs::read_to_string(&out_file).unwrap(), output);
    let (a, b) = (
        r["inserted_range"][0].as_u64().unwrap() as usize,
        r["inserted_range"][1].as_u64().unwrap() as usize,
    );
    assert_eq!(format!("{}{}", &output[..a], &output[b..]), METHOD);
    assert!(output[a..b].contains(r["statement"].as_str().unwrap()));
}

#[test]
fn suggest_respects_budget() {
    let dir = TempDir::new().unwrap();
    let (_, backend) = trained(&dir);
    let f = dir.path().join("M.java");
    fs::write(&f, METHOD).unwrap();
    let set = stdout_json(&loggen(&[
        "--json",
        "suggest",
        "--method",
        p(&f),
        "--backend",
        &backend,
        "--budget",
        "4",
        "--beam",
        "4",
    ]));
    let n = set["suggestions"].as_array().unwrap().len();
    assert!(n > 0 && n <= 4, "{n} suggestions");
}

#[test]
fn unsupported_backend_is_config_error() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("M.java");
    fs::write(&f, METHOD).unwrap();
    let err = error_line(&loggen(&["run", "--method", p(&f), "--backend", "ftp://x"]));
    assert_eq!(err["error"], "config");
}

#[test]
fn eval_writes_report_and_csv() {
    let dir = TempDir::new().unwrap();
    let (dataset, backend) = trained(&dir);
    let report = dir.path().join("r.json");
    let csv = dir.path().join("r.csv");
    let out = loggen(&[
        "eval",
        "--dataset",
        &dataset,
        "--backend",
        &backend,
        "--report",
        p(&report),
        "--csv",
        p(&csv),
        "--jobs",
        "3",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("all-3 100.00%"));

    let r: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["schema"], "loggen-eval-report/1");
    assert_eq!(r["config"]["jobs"], 3);
    assert_eq!(r["counts"]["samples"], 12);
    let csv = fs::read_to_string(&csv).unwrap();
    assert!(csv.starts_with("id,"));
    for rec in r["records"].as_array().unwrap() {
        assert!(csv.contains(rec["id"].as_str().unwrap()));
    }
}

#[test]
fn ablate_json_and_table_agree() {
    let dir = TempDir::new().unwrap();
    let (dataset, backend) = trained(&dir);
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"max_chunk_len": 200}"#).unwrap();
    let args = [
        "--config",
        p(&cfg),
        "--dataset",
        &dataset,
        "--backend",
        &backend,
        "--policies",
        "truncate-discard,average-split",
        "--L",
        "256",
    ];
    let table = loggen(&[&["ablate"][..], &args].concat());
    let table = String::from_utf8(table.stdout).unwrap();
    assert!(table.lines().next().unwrap().contains("≤256 Accuracy"));
    let json = stdout_json(&loggen(&[&["--json", "ablate"][..], &args].concat()));
    assert_eq!(json["schema"], "loggen-ablation-report/1");
    assert_eq!(json["max_input_len"], 256);
    let rows = json["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["policy"], "truncate-discard");
    assert_eq!(rows[0]["total"]["count"], 12);
}

#[test]
fn extract_then_stats() {
    let dir = TempDir::new().unwrap();
    let src = dir.path().join("src");
    fs::create_dir(&src).unwrap();
    fs::write(
        src.join("A.java"),
        "class A {\n  void a() {\n    run();\n    log.info(\"done\");\n  }\n  void b() { run(); }\n}\n",
    )
    .unwrap();
    let out = dir.path().join("ds.jsonl");
    let manifest = stdout_json(&loggen(&[
        "--json",
        "extract-samples",
        "--src",
        p(&src),
        "--out",
        p(&out),
        "--repo",
        "acme/a",
    ]));
    assert_eq!(manifest["schema"], "loggen-dataset-manifest/1");
    assert_eq!(manifest["counts"]["samples"], 1);
    assert!(dir.path().join("ds.jsonl.manifest.json").exists());
    let stats = stdout_json(&loggen(&["--json", "stats", p(&out)]));
    assert_eq!(stats["count"], 1);
}
