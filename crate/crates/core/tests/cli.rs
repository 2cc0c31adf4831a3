use std::process::{Command, Output};

use serde_json::Value;

fn knotskein(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotskein")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("one JSON document")
}

#[test]
fn invariants_json_is_stable() {
    for input in ["trefoil", "O1+U2+U1+O2+", "O1+U2+ / U1+O2+", "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"] {
        let a = knotskein(&["invariants", input]);
        let b = knotskein(&["invariants", input]);
        assert_eq!(a.status.code(), Some(0), "{input}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout);
        assert!(json(&a).is_object());
    }
}

#[test]
fn trefoil_report() {
    let v = json(&knotskein(&["invariants", "--gauss", "O1+U2+O3+U1+O2+U3+"]));
    assert_eq!(v["conway"], "z^2+1");
    assert_eq!(v["arf"], 1);
    assert_eq!(v["odd_writhe"], 0);
}

#[test]
fn table_lines_parse() {
    let out = knotskein(&["table", "--max-arrows", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let records: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(!records.is_empty());
    for (i, r) in records.iter().enumerate() {
        assert_eq!(r["index"], i);
    }
}

#[test]
fn equiv_exit_codes() {
    let out = knotskein(&["equiv", "--moves", "cc", "--path", "trefoil", "unknot"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("EQUIVALENT"));
    let path: Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert!(path.as_array().is_some_and(|p| !p.is_empty()));
    assert_eq!(knotskein(&["equiv", "trefoil", "unknot"]).status.code(), Some(3));
    assert_eq!(knotskein(&["invariants", "--gauss", "O1+U9"]).status.code(), Some(2));
}
