use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mpcode"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn repro_ex52_table() {
    let out = run(&["repro", "ex5.2"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains("FAIL"));
    assert!(text.contains("PASS [C2,C2,C1]T parameters: expected [12,5,4]"));
    assert!(text.contains("PASS [C3,C3,C3']T duality: expected Type I self-dual"));
    assert!(text.contains("PASS [C3,C3,C1]T duality: expected self-orthogonal"));
}

#[test]
fn repro_json_and_unknown_example() {
    let v = json(&["repro", "ex4.1"]);
    assert_eq!(v["passed"], true);
    assert!(v["claims"].as_array().unwrap().len() >= 8);
    assert_eq!(code(&run(&["repro", "ex9.9"])), 1);
}

#[test]
fn bounds_best_lower() {
    let v = json(&["mpc", "bounds", &data("ex52_i.json")]);
    assert_eq!(v["thm51_lower_52"], 4);
    assert_eq!(v["thm51_lower_53"], 3);
    assert_eq!(v["thm51_upper_54"], 4);
    assert_eq!(v["best_lower"], "thm51_lower_52");
    assert_eq!(v["d_h"], 4);
    assert_eq!(v["verified_sandwich"], true);

    let v = json(&["mpc", "bounds", &data("ex52_ii.json")]);
    assert_eq!(v["thm51_lower_52"], 2);
    assert_eq!(v["thm51_lower_53"], 4);
    assert_eq!(v["best_lower"], "thm51_lower_53");
    assert_eq!(v["d_h"], 4);
}

#[test]
fn bounds_report_inapplicable() {
    let v = json(&["mpc", "bounds", &data("not_sfrr.json")]);
    assert!(v["thm45_U"].is_null());
    assert!(v["thm45_L"].is_null());
    let why = v["applicability"]["thm45_U"].as_str().unwrap();
    assert!(why.starts_with("ProfileNotSfrr"), "{why}");
    assert_eq!(v["verified_sandwich"], true);

    let out = run(&["mpc", "bounds", &data("ex52_i.json"), "--forward", &data("profile_1.json")]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("ProfileNotSfrr"));
}

#[test]
fn search_is_worker_independent() {
    let args = ["search", "--ring", &data("f2.json"), "--rows", "3", "--cols", "3", "--pred", "two-way=2"];
    let one = json(&args);
    assert_eq!(one["count"], 6);
    assert_eq!(one["classes"].as_array().unwrap().len(), 1);
    let mut four = vec!["--workers", "4"];
    four.extend_from_slice(&args);
    assert_eq!(json(&four), one);
    let none = json(&["search", "--ring", &data("f2.json"), "--rows", "2", "--cols", "2", "--pred", "two-way=1"]);
    assert_eq!(none["count"], 0);
}

#[test]
fn search_cap() {
    let out = run(&[
        "--cap-search", "100", "search", "--ring", &data("f2.json"), "--rows", "3", "--cols", "3", "--pred", "nsc",
    ]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds the cap"));
}

#[test]
fn matrix_predicates() {
    let t = data("t.json");
    for (pred, want) in [
        ("frr", true),
        ("nsc", false),
        ("rnsc", false),
        ("qo", false),
        ("two-way=2", true),
        ("two-way=1", false),
        ("po=2", true),
    ] {
        let v = json(&["matrix", "check", &t, "--pred", pred]);
        assert_eq!(v["holds"], want, "{pred}");
    }
    let sfrr = format!("sfrr={}", data("profile_2.json"));
    assert_eq!(json(&["matrix", "check", &t, "--pred", &sfrr])["holds"], true);
    assert_eq!(code(&run(&["matrix", "check", &t, "--pred", "bogus"])), 2);
}

#[test]
fn certificate_and_errors() {
    let v = json(&["matrix", "cert", &data("t.json")]);
    assert_eq!(v["right_inverse"]["rows"].as_array().unwrap().len(), 3);
    let out = run(&["matrix", "cert", &data("not_frr.json")]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not full-row-rank"));
    assert_eq!(code(&run(&["matrix", "cert", &data("malformed.json")])), 2);
    assert_eq!(code(&run(&["matrix", "cert", &data("missing.json")])), 2);
    assert_eq!(code(&run(&["matrix"])), 2);
}

#[test]
fn codes_and_duals() {
    let v = json(&["code", "params", &data("z4_rep.json"), "--weight", &data("lee.json")]);
    assert_eq!(v["d_h"], 3);
    assert_eq!(v["d_w"], 3);
    assert_eq!(v["size"], "4");
    assert_eq!(v["free"], true);
    let d = json(&["code", "dual", &data("c1.json")]);
    assert_eq!(d["params"]["size"], "8");

    let v = json(&["mpc", "dual", &data("ex52_ii.json"), "--method", "both"]);
    assert_eq!(v["params"]["size"], "64");
    assert_eq!(v["params"]["d_h"], 4);
    let b = json(&["mpc", "build", &data("ex52_i.json")]);
    assert_eq!(b["params"]["size"], "32");
    assert_eq!(b["params"]["n"], 12);
}

#[test]
fn ring_info() {
    let v = json(&["ring", "info", &data("z6.json")]);
    assert_eq!(v["order"], 6);
    assert_eq!(v["characteristic"], 6);
    let comps = v["components"].as_array().unwrap();
    assert_eq!(comps.len(), 2);
    assert_eq!(comps[0]["idempotent"], 3);
    assert_eq!(comps[1]["idempotent"], 4);
}
