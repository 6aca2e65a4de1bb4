use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn fibrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fibrep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn result<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["results"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["name"] == name)
        .map(|r| &r["value"])
        .unwrap_or_else(|| panic!("no result {name}"))
}

fn generate(dir: &TempDir, file: &str, args: &[&str]) -> String {
    let path = dir.path().join(file).display().to_string();
    let mut all = vec!["generate"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", &path]);
    let out = fibrep(&all);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    path
}

fn strs(v: &Value) -> Vec<&str> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap())
        .collect()
}

#[test]
fn generate_writes_basis_vectors() {
    let dir = TempDir::new().unwrap();
    let path = generate(&dir, "onb.json", &["onb", "--n", "6", "--dim", "6"]);
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(file["dim"], 6);
    let vectors = file["vectors"].as_array().unwrap();
    assert_eq!(vectors.len(), 6);
    assert_eq!(
        strs(&vectors[2]),
        ["0/1", "0/1", "1/1", "0/1", "0/1", "0/1"]
    );
}

#[test]
fn random_generation_is_deterministic() {
    let args = [
        "generate",
        "random",
        "--n",
        "5",
        "--dim",
        "3",
        "--seed",
        "7",
        "--kind",
        "dependent",
    ];
    let a = fibrep(&args);
    let b = fibrep(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let other = fibrep(&[
        "generate",
        "random",
        "--n",
        "5",
        "--dim",
        "3",
        "--seed",
        "8",
        "--kind",
        "dependent",
    ]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn analyze_round_trips_the_window() {
    let dir = TempDir::new().unwrap();
    let path = generate(
        &dir,
        "w.json",
        &[
            "random",
            "--n",
            "4",
            "--dim",
            "3",
            "--seed",
            "3",
            "--complex",
            "--kind",
            "dependent",
        ],
    );
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let out = fibrep(&["analyze", &path]);
    assert!(out.status.success());
    let report = json(&out);
    assert_eq!(report["schema_version"], "1");
    assert_eq!(report["timing_ms"], 0);
    assert_eq!(result(&report, "window"), &file);
}

#[test]
fn analyze_reports() {
    let dir = TempDir::new().unwrap();
    let onb = generate(&dir, "onb.json", &["onb", "--n", "5", "--dim", "5"]);
    let report = json(&fibrep(&["analyze", &onb]));
    let frame = result(&report, "frame");
    assert_eq!(frame["complete"], true);
    assert_eq!(frame["linearly_independent"], true);
    assert_eq!(frame["bounds"]["lambda_min"], 1.0);
    assert_eq!(frame["bounds"]["lambda_max"], 1.0);
    assert_eq!(result(&report, "union_frame")["outcome"], "pass");

    let pairs = generate(
        &dir,
        "pairs.json",
        &["sum_pairs", "--n", "16", "--dim", "17"],
    );
    let report = json(&fibrep(&["analyze", &pairs]));
    let lmin = result(&report, "frame")["bounds"]["lambda_min"]
        .as_f64()
        .unwrap();
    assert!((lmin - (2.0 - 2.0 * (std::f64::consts::PI / 17.0).cos())).abs() < 1e-9);

    let norep = generate(&dir, "norep.json", &["ex_norep", "--n", "5", "--dim", "4"]);
    let frame = result(&json(&fibrep(&["analyze", &norep])), "frame").clone();
    assert_eq!(frame["linearly_independent"], false);
    assert_eq!(frame["kernel_dim"], 1);
}

#[test]
fn fibrep_certificate_is_success() {
    let dir = TempDir::new().unwrap();
    let norep = generate(&dir, "norep.json", &["ex_norep", "--n", "5", "--dim", "4"]);
    let out = fibrep(&["fibrep", &norep]);
    assert_eq!(out.status.code(), Some(0));
    let c = result(&json(&out), "construct").clone();
    assert_eq!(c["status"], "inconsistent");
    assert_eq!(strs(&c["witness"]), ["1/1", "-1/1", "0/1"]);
}

#[test]
fn fibrep_policies_on_onb() {
    let dir = TempDir::new().unwrap();
    let onb = generate(&dir, "onb.json", &["onb", "--n", "5", "--dim", "5"]);
    let report = json(&fibrep(&["fibrep", &onb, "--policy", "half-f3"]));
    let t = result(&report, "construct");
    let col = |j: usize| {
        t["mat"]
            .as_array()
            .unwrap()
            .iter()
            .map(|row| row[j].as_str().unwrap())
            .collect::<Vec<_>>()
    };
    assert_eq!(col(0), ["0/1", "0/1", "1/2", "0/1", "0/1"]);
    assert_eq!(col(1), col(0));
    for name in ["verify", "range", "norm_bound", "injectivity"] {
        assert_eq!(result(&report, name)["outcome"], "pass", "{name}");
    }

    let report = json(&fibrep(&["fibrep", &onb, "--policy", "alternating"]));
    assert_eq!(
        strs(&result(&report, "construct")["tf1"]),
        ["-1/1", "1/1", "0/1", "0/1", "0/1"]
    );
    assert_eq!(result(&report, "verify")["outcome"], "pass");
}

#[test]
fn fibrep_pinned_and_preconditions() {
    let dir = TempDir::new().unwrap();
    let w = generate(
        &dir,
        "w.json",
        &["random", "--n", "4", "--dim", "4", "--seed", "2"],
    );
    let pin = generate(&dir, "pin.json", &["onb", "--n", "1", "--dim", "4"]);
    let report = json(&fibrep(&[
        "fibrep",
        &w,
        "--policy",
        "pinned",
        "--pin-file",
        &pin,
    ]));
    let t = result(&report, "construct");
    assert_eq!(t["extension"], "pinned");
    assert_eq!(strs(&t["tf1"]), ["1/1", "0/1", "0/1", "0/1"]);

    let norep = generate(&dir, "norep.json", &["ex_norep", "--n", "5", "--dim", "4"]);
    assert_eq!(
        fibrep(&["fibrep", &norep, "--policy", "alternating"])
            .status
            .code(),
        Some(5)
    );
    assert_eq!(
        fibrep(&["fibrep", &w, "--policy", "pinned"]).status.code(),
        Some(2)
    );

    let float = dir.path().join("float.json");
    std::fs::write(&float, r#"{"dim":2,"tail":"zero","label":"f","vectors":[["0.5","1.0"],["1.0","0.0"],["2.0","1.0"]]}"#)
        .unwrap();
    assert_eq!(
        fibrep(&["fibrep", float.to_str().unwrap()]).status.code(),
        Some(5)
    );
    assert!(fibrep(&["analyze", float.to_str().unwrap()])
        .status
        .success());
}

#[test]
fn error_exit_codes() {
    let dir = TempDir::new().unwrap();
    assert_eq!(fibrep(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        fibrep(&["generate", "nope", "--n", "3", "--dim", "3"])
            .status
            .code(),
        Some(2)
    );
    let missing = dir.path().join("missing.json");
    assert_eq!(
        fibrep(&["analyze", missing.to_str().unwrap()])
            .status
            .code(),
        Some(3)
    );
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"dim":2,"tail":"zero","label":"x","vectors":[["1/0","1"]]}"#,
    )
    .unwrap();
    assert_eq!(
        fibrep(&["analyze", bad.to_str().unwrap()]).status.code(),
        Some(4)
    );
    let unwritable = Path::new("/nonexistent-dir/out.json").to_str().unwrap();
    assert_eq!(
        fibrep(&["generate", "onb", "--n", "2", "--dim", "2", "--out", unwritable])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn reports_are_reproducible_and_text_renders() {
    let dir = TempDir::new().unwrap();
    let onb = generate(&dir, "onb.json", &["onb", "--n", "6", "--dim", "6"]);
    let a = fibrep(&["fibrep", &onb]);
    let b = fibrep(&["fibrep", &onb]);
    assert_eq!(a.stdout, b.stdout);
    let text = fibrep(&["--format", "text", "fibrep", &onb]);
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text.starts_with("fibrep (schema 1)"));
    assert!(text.contains("verify: PASS"));
    let timed = json(&fibrep(&["--timing", "fibrep", &onb]));
    assert!(timed["timing_ms"].as_u64().unwrap() >= 1);
    let out = dir.path().join("report.json");
    assert!(fibrep(&["--out", out.to_str().unwrap(), "fibrep", &onb])
        .stdout
        .is_empty());
    assert_eq!(std::fs::read(&out).unwrap(), a.stdout);
}

#[test]
fn verify_suite_passes_and_catches_a_flipped_sign() {
    let ok = fibrep(&["verify-suite", "--seeds", "12", "--max-n", "4"]);
    assert_eq!(
        ok.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&ok.stdout)
    );
    let report = json(&ok);
    assert_eq!(report["inputs"]["max_n"], 4);
    assert!(report["results"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["value"]["failed"] == 0));

    let bad = fibrep(&["verify-suite", "--seeds", "12", "--flip-rep-sign", "9"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(*result(&json(&bad), "first_failing_n"), 9);
}
