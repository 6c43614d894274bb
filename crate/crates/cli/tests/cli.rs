use std::path::Path;
use std::process::{Command, Output};

use powergraph::counting::SnReport;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_powergraph"))
        .args(args)
        .env_remove("POWERGRAPH_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let o = run(&full);
    assert!(o.status.success(), "{}", stderr(&o));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn components_examples() {
    assert_eq!(json(&["components", "--group", "sym", "--n", "5", "--graph", "quotient"])["count"], 31);
    let v = json(&[
        "components",
        "--group",
        "gen",
        "--degree",
        "4",
        "--gens",
        "(1 3),(1 2 3 4)",
        "--graph",
        "order",
    ]);
    assert_eq!(v["count"], 1);
    assert_eq!(json(&["components", "--group", "sym", "--n", "2", "--graph", "type"])["count"], 1);
    assert_eq!(json(&["components", "--group", "alt", "--n", "4", "--graph", "explicit"])["group_order"], 12);
}

#[test]
fn components_csv_columns() {
    let o = run(&["components", "--n", "4", "--graph", "type", "--format", "csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("graph,component_id,size,is_complete,census"));
    assert_eq!(lines.count(), 3);
    assert!(text.contains("type,2,2,true,\"[2,2]:1;[4]:1\""), "{text}");
}

#[test]
fn gens_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "sylow.txt", "# 2-Sylow of S_4\ndegree 4\n(1 3)\n(1 2 3 4)\n");
    let v = json(&["components", "--group", "gen", "--gens-file", &f, "--graph", "quotient"]);
    assert_eq!(v["count"], 5);
    let o = run(&["components", "--group", "gen", "--gens-file", &f, "--n", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_tables_passes() {
    let o = run(&["verify-tables", "--rows", "2..5"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("PASS: 4 rows checked"));
    let o = run(&["verify-tables", "--rows", "2..7", "--seed", "3", "--format", "json"]);
    assert!(o.status.success());
    let rows: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 6);
    assert_eq!(rows[5]["c0"], "128");
}

#[test]
fn verify_tables_reports_first_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.csv", "n,c0,c0_type,c0_order\n2,1,1,1\n3,4,2,2\n4,14,3,2\n5,31,3,3\n");
    let o = run(&["verify-tables", "--rows", "2..5", "--expected", &f]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("n=4 c0: expected 14, got 13"), "{}", stderr(&o));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn check_hom_examples() {
    let v = json(&[
        "check-hom",
        "--group",
        "gen",
        "--degree",
        "4",
        "--gens",
        "(1 3),(1 2 3 4)",
        "--map",
        "order",
    ]);
    assert_eq!(v["pseudo_covering"], false);
    assert_eq!(v["complete"], true);
    let v = json(&["check-hom", "--n", "6", "--map", "type"]);
    assert_eq!((v["complete"].clone(), v["two_hom"].clone()), (true.into(), true.into()));
    let v = json(&["check-hom", "--n", "4", "--map", "pi"]);
    assert_eq!(v["tame"], true);
    let v = json(&["check-hom", "--n", "5", "--map", "type", "--orbit-gens", "(1 2),(1 2 3 4 5)"]);
    assert_eq!(v["orbit"], true);
    let v = json(&["check-hom", "--n", "4", "--map", "pi", "--orbit-gens", "(1 2)"]);
    assert_eq!(v["orbit"], false);
    let v = json(&["check-hom", "--n", "5", "--map", "order-type"]);
    assert_eq!(v["two_hom"], true);
}

#[test]
fn check_hom_file_mode() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "p3.graph", "vertices 3\nedges 2\na\nb\nc\n0 1\n1 2\n");
    let edge = write(dir.path(), "k2.graph", "vertices 2\nedges 1\nx\ny\n0 1\n");
    let fold = write(dir.path(), "fold.map", "0 -> 0\n1 -> 1\n2 -> 0\n");
    let flip = write(dir.path(), "flip.auts", "0 -> 2\n1 -> 1\n2 -> 0\n---\n");
    let v = json(&[
        "check-hom",
        "--source",
        &path,
        "--target",
        &edge,
        "--map-file",
        &fold,
        "--orbit-file",
        &flip,
    ]);
    assert_eq!(v["pseudo_covering"], true);
    assert_eq!(v["orbit"], true);

    let broken = write(dir.path(), "broken.map", "0 -> 0\n1 => 1\n");
    let o = run(&["check-hom", "--source", &path, "--target", &edge, "--map-file", &broken]);
    assert_eq!(o.status.code(), Some(2));
    let partial = write(dir.path(), "partial.map", "0 -> 0\n");
    let o = run(&["check-hom", "--source", &path, "--target", &edge, "--map-file", &partial]);
    assert_eq!(o.status.code(), Some(2));
    let not_aut = write(dir.path(), "bad.auts", "0 -> 1\n1 -> 0\n2 -> 2\n");
    let o = run(&[
        "check-hom",
        "--source",
        &path,
        "--target",
        &edge,
        "--map-file",
        &fold,
        "--orbit-file",
        &not_aut,
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn closed_form_examples() {
    let v = json(&["closed-form", "--n", "12"]);
    assert_eq!(v["regime"], "prime_plus_one");
    assert_eq!(v["c0"], "4354561");
    let v = json(&["closed-form", "--n", "9"]);
    assert_eq!((v["regime"].clone(), v["c0"].clone()), ("neither".into(), "1".into()));
    let v = json(&["closed-form", "--n", "101"]);
    assert_eq!(v["regime"], "prime");
    let c0 = v["c0"].as_str().unwrap();
    assert_eq!(c0.len(), 156);
    assert!(c0.starts_with("9332621544") && c0.ends_with("0000001"));
    assert_eq!(run(&["closed-form", "--n", "1"]).status.code(), Some(2));
}

#[test]
fn report_round_trips() {
    let o = run(&["report", "--n", "6", "--format", "json"]);
    assert!(o.status.success());
    let r: SnReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.c0, "83");
    assert_eq!(r.steps.len(), 4);
    let back = serde_json::to_string_pretty(&r).unwrap();
    assert_eq!(back.trim(), stdout(&o).trim());
    let s = r.structure.unwrap();
    assert_eq!(s.others.len(), 82);
    assert!(!s.main.is_complete);
}

#[test]
fn caps_and_usage_errors() {
    assert_eq!(run(&["components", "--n", "10"]).status.code(), Some(3));
    assert_eq!(
        run(&["components", "--n", "5", "--graph", "explicit", "--max-order", "100"]).status.code(),
        Some(3)
    );
    let o = Command::new(env!("CARGO_BIN_EXE_powergraph"))
        .args(["components", "--n", "5", "--graph", "explicit"])
        .env("POWERGRAPH_MAX_ORDER", "50")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(run(&["components", "--graph", "dual"]).status.code(), Some(2));
    assert_eq!(run(&["components", "--group", "gen", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["components", "--n", "3", "--max-order", "0"]).status.code(), Some(2));
    assert_eq!(run(&["verify-tables", "--rows", "5..2"]).status.code(), Some(2));
    assert_eq!(run(&["report", "--n", "5", "--format", "csv"]).status.code(), Some(2));
}

#[test]
fn out_file_and_threads() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("summary.json");
    let o = run(&[
        "export",
        "--n",
        "4",
        "--summary",
        "--format",
        "json",
        "--threads",
        "2",
        "--out",
        target.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(v["graphs"][1]["components"], 13);
    let leftovers = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(leftovers, 1);
}

#[test]
fn export_graph_parses_back() {
    let o = run(&["export", "--n", "4", "--graph", "type"]);
    let g = powergraph::graphcore::parse_exchange_format(&stdout(&o)).unwrap();
    assert_eq!(g.vertex_count(), 4);
    assert_eq!(g.edge_count(), 1);
    let maps = stdout(&run(&["export", "--n", "3", "--maps"]));
    assert!(maps.starts_with("# pi\n"));
    assert!(maps.contains("# o_T\n"));
}
