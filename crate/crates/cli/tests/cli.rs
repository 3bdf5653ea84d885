use clap::Parser;
use coxdl_cli::{run, Cli};
use serde_json::Value;
use std::process::Command;

fn report(args: &[&str]) -> coxdl_cli::Report {
    let mut argv = vec!["coxdl"];
    argv.extend_from_slice(args);
    run(&Cli::try_parse_from(argv).unwrap()).unwrap()
}

fn exit_code(args: &[&str]) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_coxdl")).args(args).output().unwrap().status.code().unwrap()
}

#[test]
fn count_example() {
    let r = report(&["count", "--q", "2", "--n", "2", "--kappa", "0", "--h", "1", "--ext", "2"]);
    assert_eq!(r.results, serde_json::json!({ "points": 6 }));
    assert!(r.all_pass());
    assert_eq!(r.config["options"]["ext"], 2);
}

#[test]
fn verify_examples() {
    let r = report(&["verify", "norm-image", "--q", "3", "--n", "2", "--m", "1", "--h", "2"]);
    assert!(r.all_pass() && !r.verdicts[0].skipped);
    let r = report(&["verify", "curve-reduction", "--q", "5", "--a", "2", "--b", "3", "--c", "2", "--d", "3"]);
    assert!(r.all_pass());
    let r = report(&["verify", "rh-fibers", "--q", "2", "--r", "3", "--s", "2", "--h", "2"]);
    assert!(r.verdicts[0].skipped);
    let r = report(&["verify", "rh-fibers", "--q", "2", "--r", "3", "--s", "2", "--h", "2", "--force"]);
    assert!(!r.all_pass());
    let r = report(&["verify", "minor-identity", "--q", "2", "--n", "4", "--kappa", "2", "--ext", "6", "--samples", "50"]);
    assert!(r.all_pass(), "{:?}", r.verdicts);
    let r = report(&["verify", "quotient-fibers", "--q", "2", "--n", "2", "--schedule", "2,4"]);
    assert!(r.all_pass(), "{:?}", r.verdicts);
    let r = report(&["verify", "sigma-w", "--n", "4", "--kappa", "2"]);
    assert!(r.all_pass());
    let r = report(&["verify", "turnbull", "--trials", "20", "--seed", "5"]);
    assert!(r.all_pass());
}

#[test]
fn output_is_deterministic() {
    let args = ["mackey", "--q", "2", "--n", "2", "--kappa", "1", "--h", "2", "--all"];
    let a = serde_json::to_value(report(&args)).unwrap();
    let mut b = serde_json::to_value(report(&[&args[..], &["--threads", "1"]].concat())).unwrap();
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timings");
        v["config"]["options"].as_object_mut().unwrap().remove("threads");
        v
    };
    b = strip(b);
    assert_eq!(strip(a), b);
}

#[test]
fn cache_reuse() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["chartab", "--q", "3", "--n", "2", "--cache-dir", d];
    let first = report(&args);
    assert!(first.cache_stats.misses > 0);
    let second = report(&args);
    assert_eq!(second.cache_stats.misses, 0);
    assert_eq!(first.results, second.results);
    assert!(dir.path().join("scounts-3-2-0-1.jsonl").exists());
}

#[test]
fn param_and_degree() {
    let r = report(&["param", "--q", "3", "--n", "2"]);
    assert!(r.all_pass());
    assert_eq!(r.results["characters"].as_array().unwrap().len(), 8);
    let r = report(&["degree", "--q", "3", "--n", "2", "--h", "2"]);
    assert!(r.all_pass());
    assert!(r.results.as_array().unwrap().iter().all(|x| x["formula"] == 6 && x["formal_degree"] == serde_json::json!([6, 1])));
    let r = report(&["howe", "--q", "2", "--n", "2", "--theta", "trivial"]);
    assert_eq!(r.results["characters"][0]["general_position"], false);
}

#[test]
fn quick_profile_lemmas_pass() {
    let r = report(&["accept", "--profile", "quick", "--only", "9,10"]);
    assert_eq!(r.verdicts.len(), 2);
    assert!(r.all_pass(), "{:?}", r.verdicts);
}

#[test]
fn exit_codes() {
    assert_eq!(exit_code(&["count", "--q", "2", "--n", "2"]), 0);
    assert_eq!(exit_code(&["count", "--n", "2"]), 2);
    assert_eq!(exit_code(&["count", "--q", "6", "--n", "2"]), 2);
    assert_eq!(exit_code(&["frobnicate"]), 2);
    assert_eq!(exit_code(&["count", "--q", "2", "--n", "3", "--h", "4"]), 3);
    assert_eq!(exit_code(&["verify", "rh-fibers", "--q", "2", "--r", "3", "--s", "2", "--h", "2", "--force"]), 1);
    let out = Command::new(env!("CARGO_BIN_EXE_coxdl"))
        .args(["chartab", "--q", "2", "--n", "2", "--format", "csv"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("theta,class,rep_hash,size,value,re,im"));
}
