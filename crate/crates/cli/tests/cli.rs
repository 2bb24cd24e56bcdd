use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const EUCLIDEAN: &str = "kind: hyperfield
elements: 0 1 -1
zero: 0
one: 1
neg: 0 2 1
mul:
  0 0 0
  0 1 2
  0 2 1
add:
  {0} {1} {2}
  {1} {1} {0,1,2}
  {2} {0,1,2} {2}
";

fn witt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_witt")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn report(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn witt_pipeline_for_gf3() {
    let o = witt(&["witt", "--field", "3", "--max-dim", "4"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.contains("hyperfield: pass"));
    assert!(text.contains("quadratic (forms of dim <= 4): pass"));
    assert!(text.contains("W: finite, 4 classes"));
    assert!(text.contains("oracle match: yes"));
}

#[test]
fn witt_for_gf2_mentions_the_convention() {
    let o = witt(&["witt", "--field", "2"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.contains("W: finite, 2 classes"));
    assert!(text.contains("oracle convention: characteristic 2"));
}

#[test]
fn euclidean_builtin_passes() {
    let o = witt(&["check-hyperfield", "--builtin", "euclidean3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("hyperfield: pass"));
}

#[test]
fn decided_isometry_query_is_success() {
    let o = witt(&["isom", "--builtin", "euclidean3", "--form", "1,1", "--form", "-1,-1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("not isometric"));
    let o = witt(&["isom", "--builtin", "euclidean3", "--form", "1,-1", "--form", "-1,1"]);
    assert!(stdout(&o).contains(": isometric"));
}

#[test]
fn dimension_mismatch_is_usage_error() {
    let o = witt(&["isom", "--builtin", "euclidean3", "--form", "1", "--form", "1,1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn broken_table_is_mathematical_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.txt");
    let broken = EUCLIDEAN.replace("{1} {1} {0,1,2}", "{1} {1} {0}").replace("{2} {0,1,2} {2}", "{2} {0} {2}");
    std::fs::write(&path, broken).unwrap();
    let o = witt(&["check-hyperfield", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("hypermonoid.iii associativity"), "{}", stdout(&o));
}

#[test]
fn malformed_document_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, EUCLIDEAN.replace("  0 1 2\n", "  0 1 x\n")).unwrap();
    let o = witt(&["check-hyperfield", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 8"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(witt(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(witt(&["check-hyperfield", "--builtin", "nope"]).status.code(), Some(2));
    assert_eq!(witt(&["check-hyperfield"]).status.code(), Some(2));
    assert_eq!(witt(&["qhf", "--field", "6"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = out.to_str().unwrap();
    let mut runs = Vec::new();
    for _ in 0..2 {
        witt(&["witt", "--field", "5", "--out", o]);
        let mut v = report(&out);
        v.as_object_mut().unwrap().remove("elapsed_ms");
        runs.push(serde_json::to_string(&v).unwrap());
    }
    assert_eq!(runs[0], runs[1]);
    let mut randoms = Vec::new();
    for _ in 0..2 {
        witt(&["check-poset", "--random", "7", "--seed", "11", "--out", o]);
        let mut v = report(&out);
        v.as_object_mut().unwrap().remove("elapsed_ms");
        randoms.push(v);
    }
    assert_eq!(randoms[0], randoms[1]);
}

#[test]
fn emitted_documents_read_back() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = witt(&["qhf", "--field", "7", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["status"], "pass");
    let text = v["documents"][0]["text"].as_str().unwrap().to_string();
    let doc = dir.path().join("q7.txt");
    std::fs::write(&doc, &text).unwrap();
    let o = witt(&["prime", "--input", doc.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(report(&out)["documents"][0]["text"].as_str().unwrap(), text);
}

#[test]
fn presentable_and_poset_builtins() {
    let o = witt(&["check-presentable", "--builtin", "example-sq-7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = witt(&["check-poset", "--builtin", "walking-supremum"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("weakly presentable: yes"));
}

#[test]
fn pipeline_and_quotient() {
    let o = witt(&["pipeline", "--field", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("isomorphic to Q(GF(7)): yes"));
    let o = witt(&["quotient", "--field", "5", "--plain", "--subset", "1,4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("3 classes"));
}

#[test]
fn oracle_subcommand() {
    let o = witt(&["oracle", "--field", "3", "--congruence-dim", "2", "--form", "1,1", "--form", "2,2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("W: finite, 4 classes"));
    assert!(text.contains("<1,1> and <2,2>: isometric"));
    assert_eq!(witt(&["oracle", "--field", "11"]).status.code(), Some(2));
}
