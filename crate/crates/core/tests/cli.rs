use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn dowling(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dowling")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = dowling(args);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (v, out.status.code().unwrap())
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dowling-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn count_chains_output() {
    let out = dowling(&["count-chains", "--preset", "z2-trivial-2", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        r#"{"decreasing":15,"formula":15,"labeling":"lambda","match":true}"#
    );
}

#[test]
fn build_json_and_dot() {
    let (v, code) = json(&["build", "--preset", "z2-swap", "--n", "2", "--T", ""]);
    assert_eq!(code, 0);
    assert_eq!(v["num_elements"], 7);
    assert_eq!(v["kind"], "subposet");

    let out = dowling(&["build", "--dot", "--bounded", "--preset", "z2-swap", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("rankdir=BT"));
    assert_eq!(dot.matches("rank=same").count(), 4);
    assert!(dot.trim_end().ends_with('}'));
}

#[test]
fn exit_codes() {
    let (v, code) = json(&["certify", "--preset", "z2-swap", "--n", "2", "--T", ""]);
    assert_eq!((code, v["passed"].as_bool()), (0, Some(true)));
    let (v, code) = json(&["certify", "--preset", "z4-swap", "--n", "2", "--T", ""]);
    assert_eq!((code, v["passed"].as_bool()), (1, Some(false)));
    assert_eq!(dowling(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(dowling(&["build", "--preset", "no-such-group", "--n", "2"]).status.code(), Some(2));
    assert_eq!(dowling(&["reduce", "--preset", "z2-swap", "--n", "2", "--orbit", "0"]).status.code(), Some(2));
}

#[test]
fn group_file_errors() {
    let bad = scratch("bad.json", "{\"order\": 2,\n \"mult\": [[0,1],[1,1]], \"set_size\": 0}");
    let out = dowling(&["build", "--group", bad.to_str().unwrap(), "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no two-sided inverse"));

    let broken = scratch("broken.json", "{\"order\": 2,\n  \"mult\": [[0,1],[1,0]\n");
    let out = dowling(&["build", "--group", broken.to_str().unwrap(), "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));

    let good = scratch(
        "good.json",
        r#"{"order": 2, "mult": [[0,1],[1,0]], "set_size": 2, "act": [[0,1],[1,0]]}"#,
    );
    let (v, code) = json(&["build", "--group", good.to_str().unwrap(), "--n", "2"]);
    assert_eq!(code, 0);
    let (w, _) = json(&["build", "--preset", "z2-swap", "--n", "2"]);
    assert_eq!(v["covers"], w["covers"]);
    assert_eq!(v["elements"][3]["label"], "[1_e ∥ 2_s1]");
    assert_eq!(w["elements"][3]["label"], "[1_e ∥ 2_+]");
}

#[test]
fn output_is_independent_of_worker_count() {
    for cmd in [
        &["homology", "--preset", "z2-trivial-2", "--n", "3"][..],
        &["verify-el", "--witnesses", "--preset", "z2-swap", "--n", "2", "--T", ""][..],
        &["build", "--preset", "z3-nontrivial-3", "--n", "2"][..],
    ] {
        let one = dowling(&[cmd, &["--jobs", "1"]].concat());
        let four = dowling(&[cmd, &["--jobs", "4"]].concat());
        assert_eq!(one.stdout, four.stdout);
    }
}

#[test]
fn bijection_round_trip_through_files() {
    let (all, code) = json(&["bijection", "--direction", "fwd", "--preset", "z2-trivial-2", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(all["count"], 3);
    for (i, pair) in all["pairs"].as_array().unwrap().iter().enumerate() {
        let chain = scratch(&format!("chain{i}.json"), &pair["chain"].to_string());
        let (fwd, code) = json(&[
            "bijection", "--direction", "fwd", "--input", chain.to_str().unwrap(),
            "--preset", "z2-trivial-2", "--n", "2",
        ]);
        assert_eq!(code, 0);
        let tree = scratch(&format!("tree{i}.json"), &fwd["pairs"][0]["tree"].to_string());
        let (inv, code) = json(&[
            "bijection", "--direction", "inv", "--input", tree.to_str().unwrap(),
            "--preset", "z2-trivial-2", "--n", "2",
        ]);
        assert_eq!(code, 0);
        assert_eq!(inv["pairs"][0]["chain"], pair["chain"]);
    }
}

#[test]
fn charpoly_and_trees() {
    let (v, code) = json(&["charpoly", "--preset", "z2-trivial-1", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["polynomial"], "t^2 - 4t + 3");
    assert_eq!(v["match"], true);
    let (v, code) = json(&["trees", "--nodes", "3", "--q", "2", "--r", "1", "--count-only"]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], 18);
}

#[test]
fn reduce_reports_an_isomorphism() {
    let (v, code) = json(&["reduce", "--preset", "z2-swap", "--n", "2", "--T", "", "--orbit", "1"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["isomorphic"], true);
}
