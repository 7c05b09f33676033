use std::path::Path;
use std::process::{Command, Output};

const SIX_VERTEX: &str = "\
# 1-2-3-4 bidirected cycle, 3 -> 5, 4 -> 6, 5 <-> 6
6
0 1 0 1 0 0
1 0 1 0 0 0
0 1 0 1 1 0
1 0 1 0 0 1
0 0 0 0 0 1
0 0 0 0 1 0
";

const TRIANGLE: &str = "3\n0 1 0\n0 0 1\n1 0 0\n";

fn chipfire(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chipfire"))
        .current_dir(dir)
        .env_remove("CHIPFIRE_DEFAULT_BUDGET")
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn workspace() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("ex.cf"), SIX_VERTEX).unwrap();
    std::fs::write(dir.path().join("tri.cf"), TRIANGLE).unwrap();
    std::fs::write(dir.path().join("x.dist"), "1 1 0 0 1 0\n").unwrap();
    std::fs::write(dir.path().join("y.dist"), "0 0 1 1 1 0\n").unwrap();
    dir
}

#[test]
fn unreachable_example_writes_certificate() {
    let dir = workspace();
    let o = chipfire(dir.path(), &["reach", "--graph", "ex.cf", "--from", "x.dist", "--to", "y.dist", "--cert", "c.json"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("NO"), "{out}");
    assert!(out.contains("c.json"), "{out}");
    let cert = std::fs::read_to_string(dir.path().join("c.json")).unwrap();
    assert_eq!(cert.trim(), r#"{"type":"nonreach","f":[1,1,0,0,0,0],"g":[0,0,0,0,0,0]}"#);

    let o = chipfire(dir.path(), &["verify-cert", "--graph", "ex.cf", "--from", "x.dist", "--to", "y.dist", "--cert", "c.json"]);
    assert_eq!(o.status.code(), Some(0));

    std::fs::write(dir.path().join("bad.json"), r#"{"type":"nonreach","f":[1,1,0,0,0,0],"g":[1,1,0,0,0,0]}"#).unwrap();
    let o = chipfire(dir.path(), &["verify-cert", "--graph", "ex.cf", "--from", "x.dist", "--to", "y.dist", "--cert", "bad.json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn identity_is_reachable_with_empty_witness() {
    let dir = workspace();
    let o = chipfire(dir.path(), &["reach", "--graph", "tri.cf", "--from", "1 0 0", "--to", "1 0 0", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "yes");
    assert_eq!(v["witness"], serde_json::json!({"type": "game", "firings": []}));
}

#[test]
fn witness_file_is_one_based() {
    let dir = workspace();
    let o = chipfire(
        dir.path(),
        &["reach", "--graph", "tri.cf", "--from", "1 0 0", "--to", "0 0 1", "--witness", "w.json"],
    );
    assert_eq!(o.status.code(), Some(0));
    let w = std::fs::read_to_string(dir.path().join("w.json")).unwrap();
    assert_eq!(w.trim(), r#"{"type":"game","firings":[[1,1],[2,1]]}"#);
}

#[test]
fn halting_certificate_round_trip() {
    let dir = workspace();
    let o = chipfire(dir.path(), &["halt", "--graph", "tri.cf", "--dist", "1 0 0", "--cert", "h.json"]);
    assert_eq!(o.status.code(), Some(1));
    let cert = std::fs::read_to_string(dir.path().join("h.json")).unwrap();
    assert_eq!(cert.trim(), r#"{"type":"nonterminating","y":[1,0,0]}"#);
    let o = chipfire(dir.path(), &["verify-halt-cert", "--graph", "tri.cf", "--dist", "0 1 0", "--cert", "h.json"]);
    assert_eq!(o.status.code(), Some(0));
    let o = chipfire(dir.path(), &["halt", "--graph", "tri.cf", "--dist", "0 0 0"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn budgets_exit_three() {
    let dir = workspace();
    let o = chipfire(dir.path(), &["halt", "--graph", "tri.cf", "--dist", "1 0 0", "--state-cap", "2"]);
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_chipfire"))
        .current_dir(dir.path())
        .env("CHIPFIRE_DEFAULT_BUDGET", "2")
        .args(["halt", "--graph", "tri.cf", "--dist", "1 0 0"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn bad_input_exits_two() {
    let dir = workspace();
    let o = chipfire(dir.path(), &["reach", "--graph", "tri.cf", "--from", "1 0", "--to", "1 0 0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("3 vertices"));
    let o = chipfire(dir.path(), &["reach", "--graph", "missing.cf", "--from", "1", "--to", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = chipfire(dir.path(), &["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    let o = chipfire(dir.path(), &["verify-halt-cert", "--graph", "ex.cf", "--dist", "x.dist", "--cert", "x.dist"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn period_and_recurrence() {
    let dir = workspace();
    let o = chipfire(dir.path(), &["period", "--graph", "ex.cf", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["per"], 6);
    assert_eq!(v["components"], serde_json::json!([[1, 2, 3, 4], [5, 6]]));
    let o = chipfire(dir.path(), &["recurrent", "--graph", "tri.cf", "--dist", "1 0 0"]);
    assert_eq!(o.status.code(), Some(0));
    let o = chipfire(dir.path(), &["recurrent", "--graph", "tri.cf", "--dist", "0 0 0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn oracle_agrees_with_reach() {
    let dir = workspace();
    let o = chipfire(dir.path(), &["oracle", "--graph", "ex.cf", "--from", "x.dist", "--to", "y.dist"]);
    assert_eq!(o.status.code(), Some(1));
    let o = chipfire(dir.path(), &["selftest", "--n", "4", "--chips", "5", "--graphs", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("disagreements 0"));
}

#[test]
fn generation_is_deterministic() {
    let dir = workspace();
    let args = ["gen", "--kind", "eulerian", "--n", "5", "--edges", "12", "--chips", "7", "--seed", "9"];
    let a = stdout(&chipfire(dir.path(), &args));
    let b = stdout(&chipfire(dir.path(), &args));
    assert_eq!(a, b);
    let o = chipfire(dir.path(), &["gen", "--n", "4", "--chips", "3", "--seed", "1", "--out", "g.cf"]);
    assert_eq!(o.status.code(), Some(0));
    let g = chipfire::Digraph::parse(&std::fs::read_to_string(dir.path().join("g.cf")).unwrap()).unwrap();
    assert_eq!(g.vertex_count(), 4);
    let x = chipfire::ChipDistribution::parse(&std::fs::read_to_string(dir.path().join("g.cf.dist")).unwrap()).unwrap();
    assert_eq!(x.total(), 3.into());

    let json = ["reach", "--graph", "g.cf", "--from", "g.cf.dist", "--to", "g.cf.dist", "--json"];
    assert_eq!(stdout(&chipfire(dir.path(), &json)), stdout(&chipfire(dir.path(), &json)));
}
