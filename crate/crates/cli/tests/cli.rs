use std::process::{Command, Output};

use serde_json::Value;

fn ramify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ramify")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = ramify(args);
    assert_eq!(out.status.code(), Some(0), "{:?}: {}", args, String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

/// Every field of `expected` appears in `got` with the same value.
fn assert_subset(got: &Value, expected: &str) {
    let expected: Value = serde_json::from_str(expected).unwrap();
    for (k, v) in expected.as_object().unwrap() {
        assert_eq!(got.get(k), Some(v), "field {} of {}", k, got);
    }
    assert_eq!(got["schema"], 1);
}

#[test]
fn conductor_example() {
    assert_subset(&json(&["conductor", "--q", "2", "--s", "1", "--f", "x"]), r#"{"conductor":"2*inf"}"#);
}

#[test]
fn rsw_example() {
    let got = json(&["rsw", "--p", "3", "--E", "F3(u)", "--w", "[u*t^-4 + O(t^4)]"]);
    assert_subset(&got, r#"{"m":5,"lead":["2*u","0"]}"#);
}

#[test]
fn rsw_preimage_round_trips() {
    let got = json(&["rsw", "--p", "3", "--level", "5", "--lead", "2"]);
    assert_subset(&got, r#"{"m":5,"lead":["2","0"]}"#);
    // the surjectivity direction needs a perfect residue field
    let out = ramify(&["rsw", "--p", "3", "--E", "F3(u)", "--level", "5", "--lead", "2*u"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn rayclass_example_both_ways() {
    let expected = r#"{"invariant_factors":[2],"order":2}"#;
    assert_subset(&json(&["rayclass", "--q", "2", "--modulus", "2*inf"]), expected);
    assert_subset(&json(&["rayclass", "--q", "2", "--modulus", "2*inf", "--oracle", "--deg-bound", "6"]), expected);
}

#[test]
fn witt_ring_examples() {
    let one = "[1 + O(t^4)]";
    // [1] + [1] = (0, 1) in W_2(F_2), displayed with the Teichmüller slot first
    let t = "[1 + O(t^4); 0]";
    assert_eq!(json(&["witt", "add", "--p", "2", "--w", t, "--v", t])["result"], "[O(t^4); 1 + O(t^4)]");
    assert_eq!(json(&["witt", "add", "--p", "2", "--w", one, "--v", one])["result"], "[O(t^4)]");
    let c = json(&["witt", "conductor", "--p", "3", "--w", "[t^-4 + O(t^4)]"]);
    assert_eq!(c["conductor"], 5);
}

#[test]
fn reciprocity_positive_and_negative() {
    let ok = json(&["reciprocity", "--q", "2", "--f", "x", "--modulus", "2*inf", "--trials", "100"]);
    assert_subset(&ok, r#"{"passed":true,"counterexample":null}"#);
    let out = ramify(&["reciprocity", "--q", "2", "--f", "x", "--modulus", "inf", "--trials", "30", "--exhaustive-degree", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], false);
    assert!(v["counterexample"]["g"].is_string());
}

#[test]
fn schmid_sums_to_zero() {
    let v = json(&["schmid", "--q", "3", "--a", "x", "--b", "x+1"]);
    assert_eq!(v["holds"], true);
    assert_eq!(v["sum"], 0);
}

#[test]
fn k2_examples() {
    assert_subset(&json(&["k2", "gersten", "--q", "3", "--a", "x+y", "--b", "x-y"]), r#"{"holds":true}"#);
    let t = json(&["k2", "claim1", "--p", "3", "--u1", "1", "--u2", "2", "--alpha", "y"]);
    let rows = t["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for r in rows {
        for field in ["prime", "expected", "got", "match"] {
            assert!(r.get(field).is_some(), "row lacks {}", field);
        }
        assert_eq!(r["match"], true);
    }
    let text = ramify(&["k2", "claim1", "--p", "3", "--u1", "1", "--u2", "2", "--alpha", "y", "--format", "text"]);
    assert_eq!(text.status.code(), Some(0));
    assert!(String::from_utf8(text.stdout).unwrap().contains("expected"));
}

#[test]
fn mu_transformation_holds() {
    let v = json(&[
        "k2", "mu", "--p", "5", "--alpha", "x+1", "--beta", "y", "--u", "1+x", "--v", "2+y",
    ]);
    assert_eq!(v["nu_shape"], true);
    assert!(!v["terms"].as_array().unwrap().is_empty());
}

#[test]
fn selftest_example_is_deterministic() {
    let a = ramify(&["selftest", "--seed", "0", "--trials", "50"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
    let b = ramify(&["selftest", "--seed", "0", "--trials", "50"]);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["bogus"],
        vec!["conductor", "--f", "x"],
        vec!["conductor", "--q", "6", "--f", "x"],
        vec!["conductor", "--q", "2", "--f", "x +* 1"],
        vec!["selftest", "--suite", "nonexistent"],
    ] {
        let out = ramify(&args);
        assert_eq!(out.status.code(), Some(2), "{:?}", args);
        assert!(!out.stderr.is_empty());
    }
    let parse = ramify(&["conductor", "--q", "2", "--f", "x +* 1"]);
    let msg = String::from_utf8(parse.stderr).unwrap();
    assert!(msg.contains("position 3") && msg.contains('*'), "{}", msg);
}

#[test]
fn mathematical_failures_exit_1() {
    // p1 = q here, so the configuration is degenerate
    let out = ramify(&["k2", "claim1", "--p", "3", "--u1", "1", "--u2", "2", "--alpha", "1"]);
    assert_eq!(out.status.code(), Some(1));
}
