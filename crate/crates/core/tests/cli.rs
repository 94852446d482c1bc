use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name).to_string_lossy().into_owned()
}

fn simwfa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_simwfa")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).to_string()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn eval_counts_paths() {
    let o = simwfa(&["eval", &data("nat_ab.wfa"), "ab"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "1"));
    let o = simwfa(&["eval", &data("nat_ab.wfa"), "aab"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "0"));
    let o = simwfa(&["eval", &data("z4_a.wfa"), "aa"]);
    assert_eq!(stdout(&o), "2");
}

#[test]
fn eval_rejects_unknown_letter() {
    let o = simwfa(&["eval", &data("nat_ab.wfa"), "abc"]);
    assert_ne!(code(&o), 0);
}

#[test]
fn enum_lists_every_word() {
    let o = simwfa(&["enum", &data("nat_ab.wfa"), "--max-len", "2"]);
    assert_eq!(code(&o), 0);
    let lines: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(lines.len(), 7);
    assert!(lines.contains(&"ab\t1".to_string()));
    let o = simwfa(&["--json", "enum", &data("nat_ab.wfa"), "--max-len", "2"]);
    assert_eq!(json(&o)["coefficients"].as_array().unwrap().len(), 7);
}

#[test]
fn check_sim_accepts_shipped_certificate() {
    let o = simwfa(&["check-sim", &data("nat_sum_pow2.sim")]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let o = simwfa(&["check-sim", &data("nat_sum.wfa"), &data("nat_pow2.wfa"), &data("nat_sum_pow2.sim")]);
    assert_eq!(code(&o), 0);
    let o = simwfa(&["--json", "check-sim", &data("nat_sum_pow2.sim")]);
    assert_eq!(json(&o)["result"], "pass");
}

#[test]
fn check_sim_reports_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.sim");
    std::fs::write(&bad, "X:\n  1\n  0\n").unwrap();
    let o = simwfa(&["check-sim", &data("nat_sum.wfa"), &data("nat_pow2.wfa"), bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
}

#[test]
fn decide_finds_witness() {
    let o = simwfa(&["decide", &data("bool_a.wfa"), &data("bool_aa.wfa")]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("witness: a"));
    let o = simwfa(&["--json", "decide", &data("bool_a.wfa"), &data("bool_aa.wfa")]);
    let v = json(&o);
    assert_eq!(v["verdict"], "INEQUIVALENT");
    assert_eq!(v["evidence"]["word"], "a");
}

#[test]
fn decide_writes_verifiable_chain() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ev");
    let o = simwfa(&["decide", &data("bool_plus1.wfa"), &data("bool_plus2.wfa"), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).starts_with("EQUIVALENT"));
    let chain = out.join("chain.txt");
    let o = simwfa(&["verify-chain", chain.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn joint_over_rationals() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("j");
    let o = simwfa(&["joint", &data("rat_sum.wfa"), &data("rat_pow2.wfa"), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    for cert in ["X.sim", "Y.sim"] {
        let p: PathBuf = out.join(cert);
        assert_eq!(code(&simwfa(&["check-sim", p.to_str().unwrap()])), 0);
    }
}

#[test]
fn joint_refuses_naturals() {
    let o = simwfa(&["joint", &data("nat_sum.wfa"), &data("nat_pow2.wfa")]);
    assert_eq!(code(&o), 64);
}

#[test]
fn tropical_pair_is_inconclusive() {
    let o = simwfa(&["decide", &data("trop_one.wfa"), &data("trop_two.wfa")]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).starts_with("INCONCLUSIVE"));
    let o = simwfa(&["--json", "probe-tropical", &data("trop_one.wfa"), &data("trop_two.wfa")]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["forward"]["outcome"], "none-within-bound");
    assert_eq!(v["backward"]["outcome"], "found");
}

#[test]
fn validate_semiring_tables() {
    assert_eq!(code(&simwfa(&["validate-semiring", &data("z4.tbl")])), 0);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.tbl");
    let text = std::fs::read_to_string(data("bool.tbl")).unwrap();
    let out = simwfa(&["--json", "validate-semiring", &data("bool.tbl")]);
    assert_eq!(json(&out)["result"], "pass");
    // 1·1 = 0
    let mutated = text.replacen("mul:\n  0 0\n  0 1", "mul:\n  0 0\n  0 0", 1);
    assert_ne!(mutated, text, "bool.tbl layout changed");
    std::fs::write(&bad, mutated).unwrap();
    let o = simwfa(&["--json", "validate-semiring", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["result"], "fail");
}

#[test]
fn parse_errors_name_the_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.wfa");
    std::fs::write(&bad, "semiring: nat\nalphabet: a\ndim: 1\nalpha: x\nM a:\n  1\nbeta: 1\n").unwrap();
    let o = simwfa(&["eval", bad.to_str().unwrap(), "a"]);
    assert_eq!(code(&o), 65);
    assert!(stderr(&o).contains("bad.wfa:4:8"), "{}", stderr(&o));
}

#[test]
fn usage_and_io_errors() {
    assert_eq!(code(&simwfa(&["eval"])), 64);
    assert_eq!(code(&simwfa(&["frobnicate"])), 64);
    assert_eq!(code(&simwfa(&["eval", "/nonexistent.wfa", "a"])), 64);
    let o = simwfa(&["--json", "eval", "/nonexistent.wfa", "a"]);
    assert_eq!(json(&o)["exit"], 64);
    assert_eq!(code(&simwfa(&["--help"])), 0);
}

#[test]
fn mismatched_semirings() {
    let o = simwfa(&["decide", &data("bool_a.wfa"), &data("nat_ab.wfa")]);
    assert_eq!(code(&o), 64);
}

#[test]
fn budget_from_config() {
    let o = simwfa(&["--json", "--config", &data("budget.toml"), "--explain-budget"]);
    assert_eq!(code(&o), 0);
    assert!(json(&o)["max_word_len"].is_u64());
}
