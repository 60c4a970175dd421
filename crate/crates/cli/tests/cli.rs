use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use reeskit::io::{parse_algebra, serialize_algebra};
use reeskit::structures::{boolean_implication4, loop5};
use reeskit::FiniteAlgebra;
use tempfile::TempDir;

fn diamond() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/diamond.alg")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reeskit"))
        .args(args)
        .env_remove("UA_MAX_SIZE")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_file(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn write_alg(dir: &TempDir, alg: &FiniteAlgebra) -> String {
    write_file(dir, &format!("{}.alg", alg.name()), &serialize_algebra(alg))
}

#[test]
fn validate_accepts_a_good_file() {
    let out = run(&["validate", diamond().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("ok: diamond"));
}

#[test]
fn validate_reports_table_violations() {
    let dir = TempDir::new().unwrap();
    let path = write_file(&dir, "bad.alg", "algebra bad\nsize 2\nop f 2\n0 1 2 0\n");
    let out = run(&["validate", &path]);
    assert_eq!(code(&out), 1);
    assert!(!stdout(&out).is_empty());
}

#[test]
fn syntax_errors_exit_2_with_position() {
    let dir = TempDir::new().unwrap();
    let path = write_file(&dir, "bad.alg", "algebra bad\nsize 0\n");
    let out = run(&["validate", &path]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("2:6"));
}

#[test]
fn missing_file_exits_2() {
    assert_eq!(code(&run(&["analyze", "/nonexistent/x.alg"])), 2);
}

#[test]
fn analyze_json_has_the_expected_verdicts() {
    let out = run(&["analyze", "--json", diamond().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for key in ["\"v\": 1", "\"congruence_count\": 7", "\"quasi_rees\": true", "\"obp\": true", "\"rees\": false"] {
        assert!(text.contains(key), "missing {key} in\n{text}");
    }
}

#[test]
fn conlat_dot_goes_to_a_file() {
    let dir = TempDir::new().unwrap();
    let dot = dir.path().join("lat.dot");
    let out = run(&["conlat", diamond().to_str().unwrap(), "--dot", dot.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("7 congruences"));
    let text = fs::read_to_string(dot).unwrap();
    assert!(text.starts_with("digraph congruences {"));
    assert_eq!(text.matches(" -> ").count(), 9);
}

#[test]
fn check_identity_exit_codes() {
    let f = diamond();
    let f = f.to_str().unwrap();
    let holds = run(&["check-identity", f, "--lhs", "join(x,y)", "--rhs", "join(y,x)"]);
    assert_eq!(code(&holds), 0);
    let fails = run(&["check-identity", f, "--lhs", "join(x,y)", "--rhs", "x"]);
    assert_eq!(code(&fails), 1);
    assert!(stdout(&fails).starts_with("fails:"));
    assert_eq!(code(&run(&["check-identity", f, "--lhs", "meet(x,y)", "--rhs", "x"])), 2);
}

#[test]
fn check_terms_on_a_loop() {
    let dir = TempDir::new().unwrap();
    let path = write_alg(&dir, &loop5());
    let out = run(&["check-terms", &path, "--p0", "rdiv(x,y)", "--constant", "0"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert_eq!(stdout(&out).lines().count(), 2);
}

#[test]
fn check_terms_on_an_implication_algebra() {
    let dir = TempDir::new().unwrap();
    let path = write_alg(&dir, &boolean_implication4());
    let ok = run(&["check-terms", &path, "--p0", "imp(x,y)", "--p", "imp(y,x)"]);
    assert_eq!(code(&ok), 0, "{}", stdout(&ok));
    assert!(stdout(&ok).contains("p-terms: holds"));
    let bad = run(&["check-terms", &path, "--p0", "imp(x,y)", "--p", "imp(y,x)", "--constant", "3"]);
    assert_eq!(code(&bad), 1);
    assert!(stdout(&bad).contains("weak regularity at 3: fails"));
}

#[test]
fn quotient_writes_a_valid_algebra() {
    let dir = TempDir::new().unwrap();
    let out_path = dir.path().join("q.alg");
    let out = run(&["quotient", diamond().to_str().unwrap(), "--theta", "0 1|2 3", "--out", out_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let q = parse_algebra(&fs::read_to_string(out_path).unwrap()).unwrap();
    assert_eq!(q.size(), 2);
}

#[test]
fn quotient_rejects_a_non_congruence() {
    let out = run(&["quotient", diamond().to_str().unwrap(), "--theta", "0 3|1|2"]);
    assert_eq!(code(&out), 2);
    let malformed = run(&["quotient", diamond().to_str().unwrap(), "--theta", "0 1||2 3"]);
    assert_eq!(code(&malformed), 2);
}

#[test]
fn search_exhaustive_finds_witnesses() {
    let out = run(&[
        "search", "--signature", "op f 2", "--size", "2", "--exhaustive", "--iso", "--require", "obp", "--forbid",
        "quasi-rees",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("\"examined\""));
    assert!(text.contains("\"witnesses\""));
}

#[test]
fn search_rejects_contradictory_predicates() {
    let out = run(&["search", "--signature", "op f 2", "--size", "2", "--exhaustive", "--require", "rees", "--forbid", "rees"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn exhaustive_guard_exits_3() {
    let out = run(&["search", "--signature", "op f 2", "--size", "4", "--exhaustive"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn clap_usage_errors_exit_2() {
    assert_eq!(code(&run(&["search", "--signature", "op f 2", "--size", "2"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}
