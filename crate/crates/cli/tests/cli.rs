use std::process::{Command, Output};

use wedge_crystal_cli::GraphDocument;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wedge-crystal")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_exit_codes() {
    assert_eq!(run(&["verify", "--suite", "all", "--type", "C1", "--n", "3"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "--suite", "prop46", "--type", "A2odd", "--n", "3", "--k", "1"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "--suite", "prop41", "--type", "B1", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "spin", "--type", "D1", "--n", "4"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "--type", "C1", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "prop41", "--type", "E8", "--n", "3"]).status.code(), Some(2));
}

#[test]
fn verify_json_report() {
    let o = run(&["verify", "--suite", "thm58", "--type", "A2even", "--n", "3", "--k", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["suite"], "thm58");
}

#[test]
fn graph_output_is_deterministic_and_round_trips() {
    let args = ["graph", "--type", "C1", "--n", "3", "--k", "2", "--l", "1", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let doc: GraphDocument = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(doc.vertices.len(), 14);
    assert_eq!(doc.edges.len(), 20);
    assert_eq!(serde_json::to_string_pretty(&doc).unwrap() + "\n", stdout(&a));
    let dot = run(&["graph", "--type", "A2odd", "--n", "3", "--k", "2", "--quotient"]);
    let text = stdout(&dot);
    assert!(text.starts_with("digraph \"A2odd_n3_k2_l1_quotient\""));
    assert_eq!(text.matches(" -> ").count(), 22);
    assert_eq!(run(&["graph", "--type", "A2odd", "--n", "3", "--k", "2", "--quotient"]).stdout, dot.stdout);
}

#[test]
fn graph_usage_errors() {
    assert_eq!(run(&["graph", "--type", "C1", "--n", "3", "--k", "2", "--quotient"]).status.code(), Some(2));
    assert_eq!(run(&["graph", "--type", "C1", "--n", "3", "--k", "2", "--l", "2"]).status.code(), Some(2));
    assert_eq!(run(&["graph", "--type", "C1", "--n", "3", "--k", "1"]).status.code(), Some(2));
}

#[test]
fn decompose_reports() {
    let o = run(&["decompose", "--type", "C1", "--n", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let sizes: Vec<u64> = v["components"].as_array().unwrap().iter().map(|c| c["size"].as_u64().unwrap()).collect();
    assert_eq!(sizes.len(), 6);
    assert_eq!(sizes.iter().sum::<u64>(), 16);
    let table = stdout(&run(&["decompose", "--type", "D1", "--n", "3"]));
    assert!(table.contains("v_3") && table.contains("v_2"));
    let odd = stdout(&run(&["decompose", "--type", "A2odd", "--n", "2"]));
    assert!(odd.contains("v_{0,2}") && odd.contains("v_{0,1}"));
}

#[test]
fn fock_verify() {
    let o = run(&["fock", "verify", "--type", "C1", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS relations"));
    let j = run(&["fock", "verify", "--type", "A2odd", "--n", "2", "--deltaword", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&j)).unwrap();
    assert_eq!(v[0]["check"], "deltaword");
    assert_eq!(run(&["fock", "verify", "--type", "C1", "--n", "2", "--deltaword"]).status.code(), Some(2));
}

#[test]
fn thread_cap_is_honored() {
    let o = Command::new(env!("CARGO_BIN_EXE_wedge-crystal"))
        .args(["verify", "--suite", "sigma", "--type", "C1", "--n", "4"])
        .env("WEDGE_CRYSTAL_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let bad = Command::new(env!("CARGO_BIN_EXE_wedge-crystal"))
        .args(["verify", "--suite", "sigma", "--type", "C1", "--n", "4"])
        .env("WEDGE_CRYSTAL_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
