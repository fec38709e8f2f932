use std::process::{Command, Output};

use serde_json::Value;

fn rado(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rado"))
        .args(args)
        .env_remove("RADO_SEED")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn envelope_fields() {
    let out = rado(&["edge", "--seed", "7", "-u", "3", "-v", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["command"], "edge");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["config"]["args"]["u"], 3);
    assert_eq!(v["result"]["edge"], false);
    let text = String::from_utf8(out.stdout).unwrap();
    let keys: Vec<usize> = [
        "\"seed\"",
        "\"version\"",
        "\"config\"",
        "\"command\"",
        "\"result\"",
    ]
    .iter()
    .map(|k| text.find(k).unwrap())
    .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn seed_sources_agree() {
    let flag = rado(&["type", "--seed", "0x1f", "--base", "1-5", "--vertex", "77"]).stdout;
    let dec = rado(&["type", "--seed", "31", "--base", "1-5", "--vertex", "77"]).stdout;
    let env = Command::new(env!("CARGO_BIN_EXE_rado"))
        .args(["type", "--base", "1-5", "--vertex", "77"])
        .env("RADO_SEED", "31")
        .output()
        .unwrap()
        .stdout;
    assert_eq!(flag, dec);
    assert_eq!(flag, env);
}

#[test]
fn exit_codes() {
    assert_eq!(rado(&["edge", "--bogus"]).status.code(), Some(1));
    assert_eq!(rado(&["nope"]).status.code(), Some(1));
    assert_eq!(rado(&["edge", "-u", "3", "-v", "3"]).status.code(), Some(1));
    // A triangle has no induced path on three vertices.
    let tri = rado(&[
        "contains",
        "--seed",
        "5",
        "--host",
        "1-64",
        "--pattern",
        "K3",
    ]);
    let w = json(&tri)["result"]["witness"]["mapping"].clone();
    let host = w
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let absent = rado(&[
        "contains",
        "--seed",
        "5",
        "--host",
        &host,
        "--pattern",
        "P3",
    ]);
    assert_eq!(absent.status.code(), Some(2));
    assert_eq!(json(&absent)["result"]["status"], "absent");
    let exhausted = rado(&[
        "construct-thick",
        "--seed",
        "1",
        "--blocks",
        "4",
        "--prefix-bound",
        "100",
    ]);
    assert_eq!(exhausted.status.code(), Some(3));
    assert_eq!(json(&exhausted)["error"]["kind"], "prefix_exhausted");
    let budget = rado(&[
        "audit-weak",
        "--seed",
        "1",
        "--host",
        "1-300",
        "--kmax",
        "5",
        "--budget",
        "2",
    ]);
    assert_eq!(budget.status.code(), Some(3));
}

#[test]
fn csv_rows() {
    let out = rado(&[
        "mc-fn",
        "--seed",
        "2",
        "--pattern",
        "K2",
        "-n",
        "4,8",
        "--n-param",
        "1",
        "--trials",
        "200",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "n,estimate,stderr,exact_if_available,envelope");
    assert_eq!(rows.len(), 3);
    assert!(rows[1].starts_with("4,"));
    assert_eq!(
        rado(&["edge", "-u", "1", "-v", "2", "--format", "csv"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn host_notations() {
    let out = rado(&[
        "sample-mup",
        "--seed",
        "4",
        "--mu-p",
        "0.5",
        "--prefix-bound",
        "10000",
    ]);
    let size = json(&out)["result"]["size"].as_u64().unwrap();
    assert!((4850..=5150).contains(&size));
    let v = json(&rado(&[
        "thick",
        "--set",
        "ap:3,7",
        "--prefix-bound",
        "100",
    ]));
    assert_eq!(v["result"]["length"], 1);
    let v = json(&rado(&["ap", "--set", "odd", "--prefix-bound", "40"]));
    assert_eq!(v["result"]["difference"], 2);
    assert_eq!(v["result"]["length"], 20);
    let v = json(&rado(&["sum", "--set", "1-4"]));
    assert!((v["result"]["sum"].as_f64().unwrap() - 25.0 / 12.0).abs() < 1e-10);
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("rado-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("edge.json");
    let out = rado(&[
        "edge",
        "-u",
        "1",
        "-v",
        "2",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "edge");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn pi02_levels() {
    let out = rado(&[
        "construct-pi02",
        "--seed",
        "3",
        "--levels",
        "2",
        "--prefix-bound",
        "1000000",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["verified"], true);
    assert_eq!(v["result"]["cross_block_edges"], 0);
    assert!(v["result"]["weighted_sum"].as_f64().unwrap() > 2.0);
}
