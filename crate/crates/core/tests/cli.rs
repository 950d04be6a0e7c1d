use std::path::Path;
use std::process::{Command, Output};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use steered_grover::circuit::parse_qasm;
use steered_grover::cli::{DatabaseFile, QueryFile};
use steered_grover::random::random_orthonormal_columns;
use steered_grover::C64;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_steergrover"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn grover_four_states() {
    let out = run(&["grover", "--n", "2", "--target", "3"]);
    let v = json(&out);
    assert_eq!(v["r_star"], 1);
    let p = v["target_probabilities"][0]["probability"]
        .as_f64()
        .unwrap();
    assert!((p - 1.0).abs() < 1e-10);
    assert_eq!(v["most_frequent"], 3);
    assert!(stderr(&out).contains("r*=1"));
}

#[test]
fn grover_subset_trace() {
    let v = json(&run(&[
        "grover", "--n", "4", "--target", "5", "--target", "9",
    ]));
    let theta = v["theta"].as_f64().unwrap();
    assert!((theta - (2.0f64 / 16.0).sqrt().asin()).abs() < 1e-12);
    assert_eq!(v["r_star"], 2);
    for t in v["trace"].as_array().unwrap() {
        assert!(t["abs_diff"].as_f64().unwrap() < 1e-9);
    }
    let same = json(&run(&["grover", "--n", "4", "--target", "0b0101,9"]));
    assert_eq!(same["trace"], v["trace"]);
}

#[test]
fn reports_are_deterministic() {
    let a = run(&[
        "grover", "--n", "6", "--target", "17", "--seed", "5", "--shots", "500",
    ]);
    let b = run(&[
        "grover", "--n", "6", "--target", "17", "--seed", "5", "--shots", "500",
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    let bad = run(&["grover", "--n", "2", "--target", "4"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stderr(&bad).contains("below 4"));

    let big = run(&["grover", "--n", "40", "--target", "1"]);
    assert_eq!(big.status.code(), Some(2));

    let dir = TempDir::new().unwrap();
    let steer = dir.path().join("trial.json");
    let amps = [
        C64::new(1.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
    ];
    QueryFile::from_amplitudes(&amps).save(&steer).unwrap();
    let unreachable = run(&[
        "grover",
        "--n",
        "2",
        "--target",
        "3",
        "--steer",
        path_str(&steer),
    ]);
    assert_eq!(unreachable.status.code(), Some(3));

    let missing = run(&["grover", "--target", "1"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(stderr(&missing).contains("--n"));
}

#[test]
fn predict_command() {
    let v = json(&run(&["predict", "--size", "10000", "--marked", "1"]));
    assert_eq!(v["r_star"], 78);
    let v = json(&run(&["predict", "--size", "16", "--marked", "4"]));
    assert_eq!(v["r_star"], 1);
    assert!((v["success_probability"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    let v = json(&run(&["predict", "--n", "3", "--marked", "8"]));
    assert_eq!(v["r_star"], 0);
    assert_eq!(run(&["predict", "--theta", "0"]).status.code(), Some(1));
}

fn write_db(dir: &TempDir, r: usize, entries: &[Vec<C64>]) -> std::path::PathBuf {
    let m = entries[0].len().trailing_zeros() as usize;
    let p = dir.path().join("db.json");
    DatabaseFile::from_entries(r, m, entries).save(&p).unwrap();
    p
}

fn write_query(dir: &TempDir, q: &[C64]) -> std::path::PathBuf {
    let p = dir.path().join("query.json");
    QueryFile::from_amplitudes(q).save(&p).unwrap();
    p
}

#[test]
fn pattern_match_finds_column() {
    let dir = TempDir::new().unwrap();
    let entries = random_orthonormal_columns(16, 8, &mut ChaCha8Rng::seed_from_u64(3));
    let db = write_db(&dir, 3, &entries);
    let q = write_query(&dir, &entries[5]);
    for variant in ["g", "ab"] {
        let v = json(&run(&[
            "pattern-match",
            "--db",
            path_str(&db),
            "--query",
            path_str(&q),
            "--variant",
            variant,
            "--shots",
            "4000",
        ]));
        assert_eq!(v["k_star"], 5);
        assert_eq!(v["classical_k_star"], 5);
        assert_eq!(v["matches_classical"], true);
        assert_eq!(v["classical_calls"], 8);
        assert!(v["quantum_oracle_calls"].as_u64().unwrap() <= 4);
    }
}

#[test]
fn pattern_match_trivial_database() {
    let dir = TempDir::new().unwrap();
    let a = vec![C64::new(0.6, 0.0), C64::new(0.0, 0.8)];
    let db = write_db(&dir, 0, std::slice::from_ref(&a));
    let q = write_query(&dir, &a);
    let v = json(&run(&[
        "pattern-match",
        "--db",
        path_str(&db),
        "--query",
        path_str(&q),
    ]));
    assert_eq!(v["k_star"], 0);
}

#[test]
fn pattern_match_rejects_malformed_entry() {
    let dir = TempDir::new().unwrap();
    let db = dir.path().join("db.json");
    std::fs::write(
        &db,
        r#"{"r": 2, "m": 1, "entries": [[[1,0],[0,0]], [[0,0],[1,0]], [[1,0],"oops"], [[1,0],[0,0]]]}"#,
    )
    .unwrap();
    let q = write_query(&dir, &[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
    let out = run(&[
        "pattern-match",
        "--db",
        path_str(&db),
        "--query",
        path_str(&q),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("entry 2"), "{}", stderr(&out));

    std::fs::write(&db, "{\"r\": 1,\n \"m\": ").unwrap();
    let out = run(&[
        "pattern-match",
        "--db",
        path_str(&db),
        "--query",
        path_str(&q),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("line 2"));
}

#[test]
fn emit_qasm_to_file_and_out() {
    let dir = TempDir::new().unwrap();
    let qasm = dir.path().join("grover.qasm");
    let report = dir.path().join("report.json");
    let out = run(&[
        "emit-qasm",
        "--n",
        "3",
        "--target",
        "101",
        "--emit",
        path_str(&qasm),
        "--out",
        path_str(&report),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert!(v["abs_diff"].as_f64().unwrap() < 1e-10);
    let text = std::fs::read_to_string(&qasm).unwrap();
    assert!(text.starts_with("OPENQASM 3.0;"));
    assert_eq!(parse_qasm(&text).unwrap().n_qubits(), 3);

    let inline = json(&run(&["emit-qasm", "--n", "2", "--target", "3"]));
    assert!(inline["qasm"].as_str().unwrap().contains("cz q[1], q[0];"));
}
