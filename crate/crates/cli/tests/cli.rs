use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn zeroclass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zeroclass")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is JSON")
}

#[test]
fn validate_accepts_and_rejects() {
    let ok = zeroclass(&["validate", data("example_a.json").to_str().unwrap()]);
    assert!(ok.status.success());
    assert!(String::from_utf8_lossy(&ok.stdout).contains("order 4"));

    let bad = zeroclass(&["validate", data("not_associative.txt").to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1));
    let err = stderr_json(&bad);
    assert_eq!(err["error"], "InvalidMonoid");
    assert!(err["details"].as_array().unwrap().len() > 1, "all violations are listed");
}

#[test]
fn missing_file_is_a_domain_error() {
    let out = zeroclass(&["validate", "/nonexistent/monoid.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(zeroclass(&[]).status.code(), Some(2));
    let f = data("example_a.json");
    let out = zeroclass(&["generate", f.to_str().unwrap(), "--submonoid", "1", "--kind", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(zeroclass(&["census", "--all"]).status.code(), Some(2));
}

#[test]
fn not_a_submonoid_exits_1() {
    let f = data("example_a.json");
    let out = zeroclass(&["classify", f.to_str().unwrap(), "--submonoid", "2,3"]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_json(&out);
    assert_eq!(err["error"], "NotASubmonoid");
    assert_eq!(err["details"]["generated"], serde_json::json!(["1", "2", "3"]));

    let unknown = zeroclass(&["classify", f.to_str().unwrap(), "--submonoid", "1,9"]);
    assert_eq!(unknown.status.code(), Some(1));
}

#[test]
fn submonoids_lists_names() {
    let out = zeroclass(&["submonoids", data("example_a.json").to_str().unwrap(), "--json"]);
    let v = stdout_json(&out);
    assert_eq!(v.as_array().unwrap().len(), 6);
    assert_eq!(v[0], serde_json::json!(["1"]));
}

#[test]
fn classify_json_report() {
    let f = data("nil3.txt");
    let out = zeroclass(&["classify", f.to_str().unwrap(), "--submonoid", "1,0", "--json"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["isPositiveCone"], true);
    assert_eq!(v["isNormal"], false);
    let c = v["witnesses"].as_array().unwrap().iter().find(|w| w["condition"] == "C").unwrap();
    assert_eq!(c["witness"], serde_json::json!(["1", "a", "0"]));
}

#[test]
fn syntactic_congruence_of_s2_in_s3() {
    let f = data("s3.json");
    let out = zeroclass(&["syntactic", f.to_str().unwrap(), "--submonoid", "e,(12)", "--kind", "cong", "--json"]);
    let v = stdout_json(&out);
    assert_eq!(v["zeroClass"], serde_json::json!(["e"]));
    assert_eq!(v["pairs"].as_array().unwrap().len(), 6);
}

#[test]
fn generate_with_oracle() {
    let f = data("nil3.txt");
    for kind in ["refl", "preord", "eq"] {
        let out = zeroclass(&["generate", f.to_str().unwrap(), "--submonoid", "1,0", "--kind", kind, "--oracle", "--json"]);
        assert!(out.status.success(), "{kind}");
        assert_eq!(stdout_json(&out)["oracle"], true);
    }
}

#[test]
fn census_of_a_file_and_of_an_order() {
    let out = zeroclass(&["census", data("nil3.txt").to_str().unwrap(), "--json"]);
    let v = stdout_json(&out);
    assert_eq!(v["summary"]["coneNotNormal"], 1);

    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("census.jsonl");
    let args = ["census", "--all", "--order", "3", "--jsonl", store.to_str().unwrap(), "--json"];
    let first = stdout_json(&zeroclass(&args));
    assert_eq!(first["monoids"], 7);
    assert_eq!(first["total"]["submonoids"], 24);
    let lines = std::fs::read_to_string(&store).unwrap().lines().count();
    // a second run reuses the store and appends nothing
    let second = stdout_json(&zeroclass(&args));
    assert_eq!(first, second);
    assert_eq!(std::fs::read_to_string(&store).unwrap().lines().count(), lines);

    let too_big = zeroclass(&["census", "--all", "--order", "6"]);
    assert_eq!(too_big.status.code(), Some(1));
}

#[test]
fn examples_pass_and_fail_by_bound() {
    let out = zeroclass(&["examples", "--json"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["allPassed"], true);

    let small = zeroclass(&["examples", "--bound", "1"]);
    assert_eq!(small.status.code(), Some(1));
    assert_eq!(stderr_json(&small)["details"]["example"], "B");
}
