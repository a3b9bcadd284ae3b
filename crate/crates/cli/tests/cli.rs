use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fbas_core::{fixtures, generate_random, parse_instance, serialize_instance, FbasInstance, Profile};
use tempfile::TempDir;

fn fbas(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fbas"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn write_instance(dir: &TempDir, name: &str, f: &FbasInstance) -> PathBuf {
    write(dir, name, &serialize_instance(f))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn intersecting_fixture_as_json() {
    let dir = TempDir::new().unwrap();
    let f3 = write_instance(&dir, "f3.json", &fixtures::f3());
    let o = fbas(&["check-intersection", s(&f3), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with(r#"{"verdict":"INTERSECTING""#), "{}", stdout(&o));
}

#[test]
fn disjoint_witness_is_printed_and_verified() {
    let dir = TempDir::new().unwrap();
    let f2 = write_instance(&dir, "f2.json", &fixtures::f2());
    let o = fbas(&["--verify", "check-intersection", s(&f2), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "DISJOINT");
    assert!(v["quorum1"].is_array() && v["quorum2"].is_array());
}

#[test]
fn qsp_on_chain() {
    let dir = TempDir::new().unwrap();
    let chain = write(
        &dir,
        "chain.json",
        r#"{"nodes":[{"id":"a","slices":[["a","b"]]},{"id":"b","slices":[["b","c"]]},{"id":"c","slices":[["c"]]}]}"#,
    );
    let o = fbas(&["qsp", s(&chain), "--node", "b", "--subset", "b,c"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("YES"));
    let o = fbas(&["qsp", s(&chain), "--node", "a", "--subset", "a,b"]);
    assert_eq!(stdout(&o).lines().next(), Some("NO"));
}

#[test]
fn oracle_refuses_large_instances() {
    let dir = TempDir::new().unwrap();
    let big = write_instance(&dir, "big.json", &generate_random(30, &Profile::plain(), 1).unwrap());
    let o = fbas(&["oracle", "dqp", s(&big)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("size guard: brute force limited to n ≤ 20"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_one() {
    let o = fbas(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("Usage"));
    let o = fbas(&["check-intersection"]);
    assert_eq!(o.status.code(), Some(1));
    let o = fbas(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn parse_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", "{\"nodes\": [ {\"id\": }");
    let o = fbas(&["stats", s(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 1"), "{}", stderr(&o));
    let missing = dir.path().join("missing.json");
    assert_eq!(fbas(&["stats", s(&missing)]).status.code(), Some(1));
}

#[test]
fn validate_lists_diagnostics() {
    let dir = TempDir::new().unwrap();
    let p = write(
        &dir,
        "x.json",
        r#"{"nodes":[{"id":"a","slices":[["a","b"]]},{"id":"b","slices":[["a"]]}]}"#,
    );
    let o = fbas(&["validate", s(&p)]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("warning: node b"), "{out}");
    assert!(out.trim_end().ends_with("VALID"));

    let p = write(&dir, "y.json", r#"{"nodes":[{"id":"a","slices":[["a","z"]]}]}"#);
    let o = fbas(&["validate", s(&p), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["valid"], false);
    assert_eq!(v["diagnostics"][0]["message"], "unknown node z");
}

#[test]
fn min_quorum_and_enumeration() {
    let dir = TempDir::new().unwrap();
    let f6 = write_instance(&dir, "f6.json", &fixtures::f6());
    let o = fbas(&["min-quorum", s(&f6), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["size"], 1);
    let o = fbas(&["min-quorum", s(&f6), "--fpt", "--k", "2", "--r", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("YES"));

    let o = fbas(&["enumerate", s(&f6), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 3);
    let o = fbas(&["enumerate", s(&f6), "--minimal-only", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 1);
    let o = fbas(&["enumerate", s(&f6), "--limit", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["truncated"], true);
}

#[test]
fn randomized_runs_are_reproducible() {
    let dir = TempDir::new().unwrap();
    let f = write_instance(&dir, "f.json", &generate_random(12, &Profile::plain(), 5).unwrap());
    let args = ["check-intersection", s(&f), "--randomized", "--k", "3", "--format", "json"];
    assert_eq!(fbas(&args).stdout, fbas(&args).stdout);
    let gen = ["generate", "random", "--n", "20", "--profile", "nested", "--seed", "9"];
    let a = fbas(&gen);
    assert_eq!(a.stdout, fbas(&gen).stdout);
    parse_instance(&stdout(&a)).unwrap();
}

#[test]
fn generators_emit_valid_documents() {
    let dir = TempDir::new().unwrap();
    let graph = write(&dir, "g.json", r#"{"vertices":["a","b","c"],"edges":[["a","b"],["b","c"],["a","c"]]}"#);
    let split = write(&dir, "s.json", r#"{"ground":["1","2","3"],"family":[["1","2"],["2","3"]]}"#);
    let circuit = write(&dir, "c.json", r#"{"gates":[{"const":true},{"const":false},{"or":[1,2]}]}"#);
    let meta = dir.path().join("meta.json");
    for args in [
        vec!["generate", "vertex-cover", s(&graph)],
        vec!["generate", "clique", s(&graph), "--k", "3"],
        vec!["generate", "set-splitting", s(&split)],
        vec!["generate", "guideline", "--sizes", "3,2", "--seed", "1"],
        vec!["generate", "mcvp", s(&circuit), "--meta", s(&meta)],
    ] {
        let o = fbas(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        parse_instance(&stdout(&o)).unwrap();
    }
    let side: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&meta).unwrap()).unwrap();
    assert_eq!(side["node"], "gate:3");
    assert_eq!(side["subset"], serde_json::json!(["gate:1", "gate:3"]));

    // The circuit evaluates to true, so the query node is in a quorum inside W.
    let inst = write(&dir, "m.json", &stdout(&fbas(&["generate", "mcvp", s(&circuit)])));
    let o = fbas(&["qsp", s(&inst), "--node", "gate:3", "--subset", "gate:1,gate:3"]);
    assert!(stdout(&o).starts_with("YES"));
}

#[test]
fn guideline_check_and_degree_reduce() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.json", &stdout(&fbas(&["generate", "guideline", "--sizes", "4,3"])));
    let o = fbas(&["guideline-check", s(&g), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["conforms"], true);

    let f1 = write_instance(&dir, "f1.json", &fixtures::f1());
    let o = fbas(&["guideline-check", s(&f1)]);
    assert_eq!(o.status.code(), Some(0));

    let p = write(
        &dir,
        "wide.json",
        r#"{"nodes":[{"id":"v","slices":[["a"],["b"],["c"]]},{"id":"a","slices":[["a"]]},{"id":"b","slices":[["b"]]},{"id":"c","slices":[["c"]]}]}"#,
    );
    let o = fbas(&["degree-reduce", s(&p)]);
    assert_eq!(o.status.code(), Some(0));
    let r = parse_instance(&stdout(&o)).unwrap();
    assert_eq!(r.len(), 5);
    assert_eq!(fbas(&["degree-reduce", s(&g)]).status.code(), Some(1));
}

#[test]
fn library_entry_point_matches_binary() {
    let dir = TempDir::new().unwrap();
    let f3 = write_instance(&dir, "f3.json", &fixtures::f3());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = fbas_cli::run(["fbas", "stats", s(&f3)], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(out, fbas(&["stats", s(&f3)]).stdout);
}
