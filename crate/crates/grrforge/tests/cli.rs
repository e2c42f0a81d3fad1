use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use grrforge::core::graph::Graph;
use serde_json::Value;

fn grrforge(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_grrforge"));
    cmd.args(args).env_remove("GRRFORGE_CACHE");
    if let Some(dir) = cache {
        cmd.env("GRRFORGE_CACHE", dir);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn thresholds_csv() {
    let o = grrforge(&["thresholds"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "family,n,paper_minQ,computed_minQ,match");
    assert_eq!(lines.len(), 12);
    assert!(lines[1..].iter().all(|l| l.ends_with(",true")));
    assert_eq!(lines[2], "psl,6,128,128,true");
}

#[test]
fn ppd_reports() {
    let v = json(&grrforge(&["ppd", "--a", "2", "--m", "6"], None));
    assert_eq!(v["schema"], "grrforge/1");
    assert_eq!(v["primes"], serde_json::json!([]));
    assert_eq!(v["exceptional"], true);
    let v = json(&grrforge(&["ppd", "--a", "2", "--m", "12"], None));
    assert_eq!(v["primes"], serde_json::json!(["13"]));
    assert_eq!(v["orders"], serde_json::json!([12]));
}

#[test]
fn sl27_search_is_complete_and_empty() {
    let o = grrforge(
        &[
            "grr-search",
            "--family",
            "sl",
            "--n",
            "2",
            "--p",
            "7",
            "--shape",
            "both",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["summary"], "no GRR found; search complete");
    let o = grrforge(
        &[
            "grr-search",
            "--family",
            "sl",
            "--n",
            "2",
            "--p",
            "7",
            "--format",
            "text",
        ],
        None,
    );
    assert!(stdout(&o).starts_with("no GRR found; search complete\n"));
}

#[test]
fn census_and_ledger() {
    let v = json(&grrforge(&["census", "--family", "gl", "--n", "4", "--f", "1"], None));
    assert_eq!(v["total"], "315");
    assert_eq!(v["classes"].as_array().unwrap().len(), 2);
    let v = json(&grrforge(&["ledger"], None));
    assert_eq!(v["rows"].as_array().unwrap().len(), 11);
    let v = json(&grrforge(
        &["bounds", "--family", "omega-plus", "--n", "8", "--f", "4"],
        None,
    ));
    assert_eq!(v["values"][0]["displayed"], "21/512");
}

#[test]
fn exit_codes_and_messages() {
    let o = grrforge(&["enumerate", "--family", "psl", "--n", "4", "--f", "2"], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds the enumeration cap"));
    let o = grrforge(&["enumerate", "--family", "u", "--n", "3", "--f", "1"], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown family"));
    let o = grrforge(
        &[
            "grr-check",
            "--family",
            "sl",
            "--n",
            "2",
            "--f",
            "1",
            "--x",
            "1,1;1",
            "--y",
            "0,1;1,0",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("malformed literal"));
    let o = grrforge(
        &[
            "estimate",
            "--family",
            "sl",
            "--n",
            "3",
            "--f",
            "1",
            "--x-order",
            "7",
            "--samples",
            "0",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn budget_exhaustion_exits_two() {
    let o = grrforge(
        &[
            "grr-search",
            "--family",
            "psl",
            "--n",
            "2",
            "--p",
            "7",
            "--shape",
            "three",
            "--aut-nodes",
            "1",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["summary"], "no GRR found; search incomplete (budget exceeded)");
    assert_eq!(v["shapes"][0]["complete"], false);
}

#[test]
fn grr_check_and_export() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.dimacs");
    let o = grrforge(
        &[
            "grr-check",
            "--family",
            "psl",
            "--n",
            "2",
            "--p",
            "7",
            "--x-order",
            "7",
            "--y",
            "0,1;6,0",
            "--export",
            path.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["isGRR"], false);
    for key in ["spec", "x", "y", "generates", "autOrder", "elapsedMs", "budgetExceeded"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let g = Graph::from_dimacs(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(g.vertex_count(), 168);
    assert!((0..168).all(|u| g.degree(u) == 3));
}

#[test]
fn replay_is_deterministic() {
    let args = [
        "estimate",
        "--family",
        "sl",
        "--n",
        "3",
        "--f",
        "1",
        "--x-order",
        "7",
        "--samples",
        "40",
        "--seed",
        "9",
        "--canonical",
    ];
    let a = grrforge(&args, None);
    let mut more = args.to_vec();
    more.extend(["--threads", "1"]);
    let b = grrforge(&more, None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["mode"], "sample");
    assert_eq!(v["fraction"], "0");
    assert!(v.get("elapsedMs").is_none());
    let x = json(&grrforge(
        &["find-x", "--family", "sp", "--n", "8", "--f", "1", "--seed", "3"],
        None,
    ));
    let y = json(&grrforge(
        &["find-x", "--family", "sp", "--n", "8", "--f", "1", "--seed", "3"],
        None,
    ));
    assert_eq!(x, y);
    assert_eq!(x["order"], "17");
}

#[test]
fn cache_is_reused_and_rebuilt() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["enumerate", "--family", "sl", "--n", "3", "--f", "2"];
    let first = json(&grrforge(&args, Some(dir.path())));
    assert_eq!(first["cache"], "built");
    assert_eq!(first["order"], "60480");
    let second = json(&grrforge(&args, Some(dir.path())));
    assert_eq!(second["cache"], "hit");
    let file = dir.path().join("sl_3_f2.grrf");
    let mut bytes = fs::read(&file).unwrap();
    bytes[0] = b'X';
    fs::write(&file, &bytes).unwrap();
    let o = grrforge(&args, Some(dir.path()));
    assert_eq!(json(&o)["cache"], "rebuilt");
    assert!(String::from_utf8_lossy(&o.stderr).contains("rejected cached table"));
    fs::write(&file, &bytes[..100]).unwrap();
    assert_eq!(json(&grrforge(&args, Some(dir.path())))["cache"], "rebuilt");
    assert_eq!(json(&grrforge(&args, Some(dir.path())))["cache"], "hit");
}
