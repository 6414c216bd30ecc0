use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quantic")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    serde_json::from_str(&stdout(&a)).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("quantic-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn roots_output() {
    let b3 = json(&["roots", "--type", "B3"]);
    let roots = b3["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 9);
    assert_eq!(roots[8], serde_json::json!([1, 0, 0]));
    assert_eq!(b3["symmetrizers"], serde_json::json!([1, 1, 2]));
    assert_eq!(json(&["roots", "--type", "A1"])["roots"].as_array().unwrap().len(), 1);
    let path = temp_file("g2.json", r#"{"order": ["1","2"], "matrix": [[2,-1],[-3,2]]}"#);
    let g2 = json(&["roots", "--cartan", path.to_str().unwrap()]);
    assert_eq!(g2["roots"].as_array().unwrap().len(), 6);
}

#[test]
fn relations_output() {
    assert_eq!(stdout(&["relations", "--type", "A1"]).trim(), "no relations");
    let g2 = stdout(&["relations", "--type", "G2"]);
    assert_eq!(g2.lines().count(), 6);
    assert!(
        g2.lines()
            .any(|l| l == "1 2 2 1 2 2 = 1 1 2 2 2 2" || l == "1 1 2 2 2 2 = 1 2 2 1 2 2"),
        "{g2}"
    );
    let b3 = stdout(&["relations", "--type", "B3"]);
    assert!(b3.contains("2 2 3 2 = 2 2 2 3"));
}

#[test]
fn normal_forms_and_products() {
    let nf = json(&["nf", "--type", "B3", "--word", "2 3 2 2 3"]);
    assert_eq!(nf["weight"], serde_json::json!([0, 3, 2]));
    let empty = stdout(&["nf", "--type", "B3", "--word", ""]);
    assert!(empty.contains("normal form: unit"));
    let p = json(&["mult", "--type", "B3", "--a", "2 2 3", "--b", "3"]);
    assert_eq!(p["nf"], serde_json::json!({"0,1,1": 2}));
    let juxtaposed = json(&["nf", "--type", "B3", "--word", "2232"]);
    assert_eq!(juxtaposed["nf"], serde_json::json!({"0,1,0": 1, "0,2,1": 1}));
}

#[test]
fn table_cells() {
    let text = stdout(&["table", "--type", "B3"]);
    let row = |name: &str| {
        text.lines()
            .find(|l| l.split_whitespace().next() == Some(name))
            .unwrap()
            .to_string()
    };
    assert!(row("1223").contains("23·123"));
    assert!(row("1").trim_end().ends_with("12·1"));
    let cells = json(&["table", "--type", "B3"]);
    assert_eq!(cells.as_array().unwrap().len(), 36);
}

#[test]
fn counts_and_verification() {
    let a1 = json(&["count", "--type", "A1", "--height", "3"]);
    for row in a1.as_array().unwrap() {
        assert_eq!(row["kostant"], 1);
        assert_eq!(row["classes"], 1);
        assert_eq!(row["normal_forms"], 1);
    }
    let b3 = json(&["count", "--type", "B3", "--height", "4"]);
    for row in b3.as_array().unwrap() {
        assert_eq!(row["kostant"], row["classes"]);
        assert_eq!(row["kostant"], row["normal_forms"]);
    }
    let out = run(&["verify", "--type", "G2", "--eta", "--maxlen", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS realization"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["roots", "--type", "X9"]).status.code(), Some(2));
    assert_eq!(run(&["nf", "--type", "B3", "--word", "4"]).status.code(), Some(2));
    assert_eq!(run(&["roots"]).status.code(), Some(2));
    let path = temp_file("affine.json", r#"{"order": ["a","b"], "matrix": [[2,-2],[-2,2]]}"#);
    assert_eq!(
        run(&["roots", "--cartan", path.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn order_flag_relabels() {
    let r = json(&["roots", "--type", "A2", "--order", "2,1"]);
    assert_eq!(r["roots"].as_array().unwrap().len(), 3);
}

#[test]
fn unfold_then_fold() {
    let q = stdout(&["unfold", "--type", "G2"]);
    let path = temp_file("g2-quiver.json", &q);
    let c: Value = serde_json::from_str(&stdout(&["fold", "--quiver", path.to_str().unwrap()])).unwrap();
    assert_eq!(c["matrix"], serde_json::json!([[2, -1], [-3, 2]]));
    assert_eq!(c["order"], serde_json::json!(["1", "2"]));
}
