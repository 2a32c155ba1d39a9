use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn mubar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mubar")).args(args).env_remove("MUBAR_SEED").env_remove("MUBAR_SAMPLES").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    let o = mubar(&a);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

/// Every number anywhere in the report is written as an integer.
fn all_integers(v: &Value) -> bool {
    match v {
        Value::Number(n) => {
            let s = n.to_string();
            !s.contains(['.', 'e', 'E'])
        }
        Value::Array(a) => a.iter().all(all_integers),
        Value::Object(m) => m.values().all(all_integers),
        _ => true,
    }
}

#[test]
fn mu_of_the_borromean_commutator() {
    let o = mubar(&["mu", "--word", "[x13,x23]", "--strands", "3", "--indices", "1,2", "--of", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("1"));
    let o = mubar(&["mu", "--word", "", "--strands", "3", "--indices", "1,2", "--of", "3"]);
    assert_eq!(stdout(&o).lines().next(), Some("0"));
    let o = mubar(&["mu", "--raw", "--word", "[x13,x23]^-1", "--strands", "3", "--indices", "2,1", "--of", "3"]);
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn mu_bar_reports_the_indeterminacy() {
    let v = json(&["mu", "--word", "x12^2 x13^4 [x13,x23]^3", "--strands", "3", "--indices", "1,2", "--of", "3"]);
    assert_eq!(v["results"]["mu_bar"]["modulus"], 2);
    assert_eq!(v["results"]["mu_bar"]["residue"], 1);
}

#[test]
fn census_counts() {
    let o = mubar(&["census", "--degree", "3", "--strands", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("labeled=216 naive=27 canonical=28"));
    let v = json(&["census"]);
    assert_eq!(v["results"]["diagrams"].as_array().unwrap().len(), 28);
    assert_eq!(mubar(&["census", "--degree", "4"]).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let bad_word = mubar(&["mu", "--word", "x31", "--strands", "3", "--indices", "1,2", "--of", "3"]);
    assert_eq!(bad_word.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad_word.stderr).contains("i < j"));
    assert_eq!(mubar(&["mu", "--word", "x12", "--strands", "3", "--indices", "1,1", "--of", "3"]).status.code(), Some(2));
    assert_eq!(mubar(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(mubar(&["typecheck", "--theory", "vassiliev", "--indices", "1,2", "--of", "3", "--degree", "1"]).status.code(), Some(2));
    assert_eq!(mubar(&["decompose", "--word", "x13", "--level", "2"]).status.code(), Some(1));
    let unclosable = file("strands 2\n1 2 +\n");
    assert_eq!(mubar(&["events", "--file", unclosable.path().to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(mubar(&["events", "--file", "/nonexistent/events.txt"]).status.code(), Some(2));
    assert_eq!(mubar(&["--help"]).status.code(), Some(0));
}

#[test]
fn events_file() {
    let f = file("# a clasp between 1 and 3, then 2 under both\nstrands 3\n3 1 +\n1 3 +\n");
    let v = json(&["events", "--file", f.path().to_str().unwrap()]);
    assert_eq!(v["results"]["linking_matrix"], serde_json::json!([[0, 0, 1], [0, 0, 0], [1, 0, 0]]));
    assert_eq!(v["results"]["mu_bar"].as_array().unwrap().len(), 6 + 6);
    let o = mubar(&["events", "--file", f.path().to_str().unwrap(), "--indices", "1", "--of", "3"]);
    assert!(stdout(&o).contains("mu_bar(1->3) = 1"));
}

#[test]
fn typecheck_reports() {
    let base = ["typecheck", "--indices", "1,2", "--of", "3", "--max-base-len", "2"];
    let one = json(&[&base[..], &["--theory", "clasp:2", "--degree", "1"]].concat());
    assert_eq!(one["results"]["all_zero"], false);
    let two = json(&[&base[..], &["--theory", "clasp:2", "--degree", "2"]].concat());
    assert_eq!(two["results"]["all_zero"], true);
    assert_eq!(two["budget"]["labels"], 24);
    let dc = json(&["typecheck", "--theory", "dc", "--indices", "1,2", "--of", "3", "--degree", "3", "--max-unmarked", "0"]);
    assert_eq!(dc["results"]["all_zero"], true);
    assert_eq!(dc["results"]["checked"], 3240);
}

#[test]
fn witness_found_at_degree_two() {
    let v = json(&["witness", "--theory", "dc", "--degree", "2", "--indices", "1,2", "--of", "3", "--budget", "2"]);
    let w = &v["results"]["witness"];
    assert_eq!(w["pairs"].as_array().unwrap().len(), 2);
    assert_ne!(w["value"]["residue"], 0);
    let none = json(&["witness", "--degree", "3", "--indices", "1,2", "--of", "3", "--budget", "0"]);
    assert!(none["results"]["witness"].is_null());
}

#[test]
fn json_is_deterministic_and_exact() {
    let args = ["typecheck", "--theory", "dc", "--indices", "1,2", "--of", "3", "--degree", "2", "--samples", "100", "--seed", "11"];
    let mut a = vec!["--json"];
    a.extend_from_slice(&args);
    let first = mubar(&a).stdout;
    assert_eq!(first, mubar(&a).stdout);
    let v: Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(v["seed"], 11);
    assert!(all_integers(&v));
    let census = json(&["census"]);
    assert!(all_integers(&census));
}

#[test]
fn env_overrides_budget_defaults() {
    let args = ["--json", "typecheck", "--theory", "dc", "--indices", "1,2", "--of", "3", "--degree", "2"];
    let o = Command::new(env!("CARGO_BIN_EXE_mubar")).args(args).env("MUBAR_SAMPLES", "30").env("MUBAR_SEED", "9").output().unwrap();
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["seed"], 9);
    assert_eq!(v["budget"]["samples"], 30);
    assert_eq!(v["results"]["checked"], 30);
}

#[test]
fn ddeval_on_a_census_diagram() {
    let d = file("circle p1+ p1- p2+ p2-\ncircle p1+ p1- p3+ p3-\ncircle p2+ p2- p3+ p3-\npair 1 1:1 2:1 / 1:2 2:2\npair 2 1:3 3:1 / 1:4 3:2\npair 3 2:3 3:3 / 2:4 3:4\n");
    let path = d.path().to_str().unwrap();
    let v = json(&["ddeval", "--diagram", path, "--class", "split", "--indices", "1,2", "--of", "3", "--samples", "4", "--seed", "2"]);
    assert_eq!(v["results"]["w"]["residue"], 0);
    let again = json(&["ddeval", "--diagram", path, "--indices", "1,2", "--of", "3", "--samples", "4", "--seed", "2"]);
    assert_eq!(v["inputs_sha256"].as_str().unwrap().len(), 64);
    assert_eq!(again["results"], v["results"]);
    let bad = file("circle a\n");
    assert_eq!(mubar(&["ddeval", "--diagram", bad.path().to_str().unwrap(), "--indices", "1,2", "--of", "3"]).status.code(), Some(2));
}

#[test]
fn collect_and_decompose() {
    let v = json(&["collect", "--word", "[m1,m2] m1", "--class", "3"]);
    let f = v["results"]["factors"].as_array().unwrap();
    assert_eq!(f[0]["bracket"], "m1");
    assert_eq!(f[1]["bracket"], "[m1,m2]");
    let o = mubar(&["decompose", "--word", "[x13,x23]^2 [x23,x13^-1]", "--level", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = mubar(&["decompose", "--word", "[x14,[x24,x34]]", "--level", "2", "--max-level", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).lines().any(|l| l.starts_with("level 3:") && l.len() > "level 3: 1".len()));
}
