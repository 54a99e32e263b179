use std::process::{Command, Output};

use serde_json::Value;

fn cycbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cycbound")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = cycbound(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim_end().lines().count(), 1);
    serde_json::from_str(&text).unwrap()
}

const PAPER_CODE: [&str; 6] = ["--q", "2", "--n", "21", "--set", "C1+C3+C7+C9"];

#[test]
fn bound_values() {
    let with_kind = |kind: &str| {
        let mut args = vec!["bound"];
        args.extend(PAPER_CODE);
        args.extend(["--kind", kind]);
        json(&args)["value"].as_u64().unwrap()
    };
    assert_eq!(with_kind("roos"), 8);
    assert_eq!(with_kind("bch"), 5);
    assert_eq!(with_kind("bound_c"), 6);
    assert_eq!(json(&["bound", "--q", "2", "--n", "21", "--set", "", "--kind", "ht"])["value"], 1);
    let mut args = vec!["bound"];
    args.extend(PAPER_CODE);
    assert_eq!(json(&args).as_array().unwrap().len(), 5);
}

#[test]
fn keys_are_sorted() {
    let out = cycbound(&["bound", "--q", "2", "--n", "21", "--set", "C1+C3+C7+C9", "--kind", "roos"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let keys: Vec<usize> = ["\"kind\"", "\"value\"", "\"witness\""].iter().map(|k| text.find(k).unwrap()).collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
    assert!(text.find("\"case\"").unwrap() < text.find("\"start\"").unwrap());
}

#[test]
fn distance_values() {
    let mut args = vec!["distance"];
    args.extend(PAPER_CODE);
    assert_eq!(json(&args)["d"], 8);
    assert_eq!(json(&["distance", "--q", "2", "--n", "15"])["d"], 1);
    assert_eq!(json(&["distance", "--q", "2", "--n", "7", "--set", "C1+C3"])["d"], 7);
    assert_eq!(json(&["distance", "--q", "2", "--n", "7", "--set", "0,1,2,3,4,5,6"])["weight_witness"], Value::Null);
}

#[test]
fn pattern_inclusion() {
    let v = json(&["pattern", "(0^2)D", "0DND0"]);
    assert_eq!((v["included"].as_bool(), v["shift"].as_u64()), (Some(true), Some(4)));
    assert_eq!(json(&["pattern", "0NN", "NN0DD"])["included"], false);
    assert_eq!(json(&["pattern", "D", "0"])["included"], true);
}

#[test]
fn schaub_and_cosets() {
    let schaub = |set: &str, n: &str| String::from_utf8(cycbound(&["schaub", "--q", "2", "--n", n, "--set", set]).stdout).unwrap();
    assert_eq!(schaub("1,2", "3").trim(), "3");
    assert_eq!(schaub("C1", "7").trim(), "3");
    assert_eq!(schaub("0,1,2,3,4,5,6", "7").trim(), "8");
    let c = json(&["cosets", "--q", "2", "--n", "15"]);
    assert_eq!(c["cosets"].as_array().unwrap().len(), 5);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| cycbound(args).status.code().unwrap();
    assert_eq!(code(&["bound", "--q", "2", "--n", "15", "--set", "Cx"]), 2);
    assert_eq!(code(&["bound", "--q", "2", "--n", "15", "--kind", "nope"]), 2);
    assert_eq!(code(&["pattern", "0^", "00"]), 2);
    assert_eq!(code(&["bound", "--q", "2", "--n", "14", "--set", "C1"]), 3);
    assert_eq!(code(&["distance", "--q", "2", "--n", "31", "--set", "C1", "--distance-cap", "10"]), 4);
}

#[test]
fn table_rows_and_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f7.csv");
    let cache = dir.path().join("cache");
    let args = ["table", "--q", "7", "--n-min", "8", "--n-max", "8", "--jobs", "2", "--out", out.to_str().unwrap(), "--cache-dir", cache.to_str().unwrap()];
    assert!(cycbound(&args).status.success());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "n,N_codes,BCH,HT,BS,RS,BC\n8,32,26,32,26,32,32\n");
    let summary = std::fs::read_to_string(dir.path().join("f7.summary.csv")).unwrap();
    assert!(summary.starts_with("n,N_codes,skipped,failed,BCH,HT,BS,RS,BC\n8,32,0,0,0,6,0,6,6\n"));
    assert!(cache.join("q7_n8.json").exists());
    let stdout = cycbound(&["table", "--q", "2", "--n-min", "15", "--n-max", "15"]).stdout;
    assert_eq!(String::from_utf8(stdout).unwrap(), "n,N_codes,BCH,HT,BS,RS,BC\n15,32,30,32,30,32,32\n");
}

#[test]
fn proof_layout() {
    let out = cycbound(&["proof", "N00D00D00D00D00DNDDDDD0000000", "--ell", "7", "--m", "2", "--s", "5"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches("discarded\n").count(), 2);
    assert!(text.ends_with("rows 13 discarded 2 survivors 11 target 11 singleton ok\n"));
    let out = cycbound(&["proof", "N000D000D000D000DND00000000", "--lambda", "2", "--mu", "4", "--s", "4"]);
    assert!(String::from_utf8(out.stdout).unwrap().ends_with("rows 16 discarded 3 survivors 13 target 13 singleton ok\n"));
    assert_eq!(cycbound(&["proof", "N00", "--s", "1"]).status.code(), Some(2));
}
