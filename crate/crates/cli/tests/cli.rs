use std::process::{Command, Output};

use serde_json::Value;

fn brauer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brauer"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn closure_of_d4_triple() {
    let out = brauer(&["adm", "closure", "--type", "D4", "--set", "a1,a2,a4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["size"], 4);
    assert_eq!(v["closure"], "{a1, a2, a4, a1+a2+2a3+a4}");
}

#[test]
fn hasse_dot_has_unique_sink() {
    let out = brauer(&[
        "adm", "hasse", "--type", "A4", "--set", "a1,a3", "--format", "dot",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph"));
    let nodes: Vec<&str> = dot
        .lines()
        .filter(|l| l.contains("[label=") && !l.contains("->"))
        .map(|l| l.split_whitespace().next().unwrap())
        .collect();
    let sinks: Vec<&&str> = nodes
        .iter()
        .filter(|n| {
            !dot.lines()
                .any(|l| l.trim().starts_with(&format!("{n} ->")))
        })
        .collect();
    assert_eq!(sinks.len(), 1);
    let sink_line = dot
        .lines()
        .find(|l| l.trim().starts_with(&format!("{} [", sinks[0])))
        .unwrap();
    assert!(sink_line.contains("[1,1,1,0] [0,1,1,1]"), "{sink_line}");
}

#[test]
fn g2_verify_passes() {
    let out = brauer(&["g2", "verify"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["basis_size"], 39);
    assert_eq!(v["ok"], true);
}

#[test]
fn g2_table_csv() {
    let out = brauer(&["g2", "table", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("i,j,delta_exp,k"));
    assert_eq!(text.lines().count(), 1 + 39 * 39);
}

#[test]
fn table_to_file() {
    let dir = std::env::temp_dir().join(format!("brauer-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.json");
    let out = brauer(&["g2", "table", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["products"].as_array().unwrap().len(), 39 * 39);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn prove_json_trace() {
    let out = brauer(&[
        "prove",
        "--presentation",
        "g2",
        "--lhs",
        "e0 r1 e0",
        "--rhs",
        "e0",
        "--max-depth",
        "24",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["delta"], 2);
    assert_eq!(v["replay"]["ok"], true);
    assert!(!v["trace"]["steps"].as_array().unwrap().is_empty());
}

#[test]
fn unprovable_is_verification_failure() {
    let out = brauer(&[
        "prove",
        "--presentation",
        "g2",
        "--lhs",
        "e0",
        "--rhs",
        "r0",
        "--max-depth",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["ok"], false);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(brauer(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(brauer(&["roots", "--type", "Q9"]).status.code(), Some(2));
    assert_eq!(
        brauer(&["g2", "table", "--format", "dot"]).status.code(),
        Some(2)
    );
    assert_eq!(
        brauer(&["adm", "closure", "--type", "D4", "--set", "a1,a3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        brauer(&[
            "prove",
            "--presentation",
            "g2",
            "--lhs",
            "e0",
            "--rhs",
            "e0",
            "--max-depth",
            "0"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn roots_round_trip() {
    let out = brauer(&["roots", "--type", "g2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["positive_roots"].as_array().unwrap().len(), 6);
    let rs = brauer_core::RootSystem::from_json(&v).unwrap();
    assert_eq!(rs.to_json(), v);
}

#[test]
fn action_apply() {
    let out = brauer(&[
        "action", "apply", "--type", "D4", "--word", "E3", "--set", "a2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"], "{a3}");
}

#[test]
fn phi_verify_and_census() {
    let out = brauer(&["phi", "verify", "--method", "prover,action"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["items"]
        .as_array()
        .unwrap()
        .iter()
        .all(|i| i["status"] == "Certified"));
    assert_eq!(brauer(&["phi", "census"]).status.code(), Some(0));
}

#[test]
fn weyl_orbit_and_stabilizer() {
    let v = json(&brauer(&["weyl", "orbit", "--type", "g2", "--set", "b0"]));
    // sets hold positive representatives, so ±β collapse
    assert_eq!(v["size"], 3);
    let v = json(&brauer(&[
        "weyl",
        "stabilizer",
        "--type",
        "D4",
        "--set",
        "a1,a2,a4,a1+a2+2a3+a4",
    ]));
    assert_eq!(v["order"], 64);
}

// one criterion is expected to fail, so verify-all reports failure
#[test]
fn verify_all_reports_each_criterion() {
    let out = brauer(&["verify-all"]);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(
        stderr
            .lines()
            .filter(|l| l.starts_with("criterion"))
            .count(),
        8
    );
    let v = json(&out);
    let passed = v["report"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == true)
        .count();
    assert_eq!(passed, 7);
    assert_eq!(out.status.code(), Some(1));
}
