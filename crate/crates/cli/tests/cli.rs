use std::process::{Command, Output};

use serde_json::Value;

fn logfman(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logfman")).args(args).env_remove("LOGFMAN_TRUNC").output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn check<'a>(r: &'a Value, name: &str) -> &'a Value {
    r["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn node_report_at_a_fixed_point() {
    let out = logfman(&["node", "--p", "2", "--q", "3", "--base", "1,0,0,0,0", "--trunc", "12"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["schema_version"], "1");
    assert_eq!(r["artifacts"]["truncation"], 12);
    assert_eq!(r["artifacts"]["flat_pairing_t"][0][0], "2/1");
    assert_eq!(r["artifacts"]["flat_pairing_s"][0][1], "3/1");
    assert_eq!(r["artifacts"]["pairing"]["total"][0][4], "1/1");
    assert_eq!(check(&r, "flat_routes_agree")["pass"], true);
    assert!(r["conventions"]["frame"].as_str().unwrap().starts_with("eps*d/deps, d/da1, d/db2"));
}

#[test]
fn same_seed_same_bytes() {
    let args = ["node", "--p", "2", "--q", "2", "--seed", "42", "--samples", "2"];
    let (a, b) = (logfman(&args), logfman(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = logfman(&["node", "--p", "2", "--q", "2", "--seed", "43", "--samples", "2"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn discriminant_and_bad_input_exit_2() {
    for args in [
        vec!["node", "--p", "2", "--q", "3", "--base", "0,1,0,0,0"],
        vec!["node", "--p", "1", "--q", "3"],
        vec!["node", "--p", "2", "--q", "2", "--base", "1,2"],
        vec!["node", "--p", "2", "--q", "2", "--base", "1,x,0,0"],
        vec!["icis", "--g", "y +", "--f", "x"],
        vec!["node", "--q", "2"],
    ] {
        let out = logfman(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn truncation_too_small_exits_3() {
    let out = logfman(&["node", "--p", "2", "--q", "3", "--base", "1,0,0,0,0", "--trunc", "3"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn truncation_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_logfman"))
        .args(["node", "--p", "2", "--q", "2", "--base", "1,0,0,0", "--samples", "0"])
        .env("LOGFMAN_TRUNC", "15")
        .output()
        .unwrap();
    assert_eq!(report(&out)["artifacts"]["truncation"], 15);
}

#[test]
fn mutation_is_caught() {
    let out = logfman(&["node", "--p", "2", "--q", "2", "--base", "1,1/2,1/3,0", "--mutate"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(check(&r, "euler_lie")["pass"], false);
    assert_eq!(check(&r, "axioms")["pass"], true);
}

#[test]
fn curve_2_2_2() {
    let out = logfman(&["curve", "--p", "2", "--q", "2", "--r", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["artifacts"]["mf_dimension"], 7);
    assert_eq!(r["artifacts"]["unfolding_monomials"].as_array().unwrap().len(), 4);
}

#[test]
fn curve_3_2_2_monomials() {
    let out = logfman(&["curve", "--p", "3", "--q", "2", "--r", "2", "--point", "1,2,-1,1/2,0,1,3,1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    let mut got: Vec<String> =
        r["artifacts"]["unfolding_monomials"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().to_string()).collect();
    got.sort();
    assert_eq!(got, ["1", "x", "x^2", "y", "z"]);
}

#[test]
fn icis_cusp() {
    let out = logfman(&["icis", "--g", "y", "--f", "x^3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["artifacts"]["mf_dimension"], 2);
}

#[test]
fn config_file_and_out() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    let dest = dir.path().join("report.json");
    std::fs::write(&cfg, r#"{"kind": "icis", "g": ["y - x^2"], "f": "x^4"}"#).unwrap();
    let out = logfman(&["icis", "--config", cfg.to_str().unwrap(), "--out", dest.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&dest).unwrap()).unwrap();
    assert_eq!(r["artifacts"]["mf_dimension"], 3);
    assert_eq!(r["config"]["f"], "x^4");

    std::fs::write(&cfg, r#"{"kind": "icis", "bogus": 1}"#).unwrap();
    assert_eq!(logfman(&["icis", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_node_only() {
    let out = logfman(&["verify", "--suite", "node-only", "--samples", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    let names: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.iter().any(|n| n.starts_with("node(2,5)/")));
    assert!(!names.iter().any(|n| n.starts_with("curve")));
}

#[test]
fn report_round_trips() {
    let out = logfman(&["icis", "--g", "x^2 + y^2 + z^2", "--f", "z"]);
    let r: logfman_cli::report::Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r.to_json().as_bytes(), &out.stdout[..]);
}
