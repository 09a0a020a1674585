use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_m12sl3")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("m12sl3-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

#[test]
fn list_shows_registry() {
    let o = run(&["list"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 16);
    assert!(text.lines().next().unwrap().starts_with("presentation-orders"));
    assert!(text.contains("gamma2-iso"));
}

#[test]
fn verify_text_and_exit_code() {
    let o = run(&["verify", "theta-check", "amalgam-two-classes"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("[PASS] theta-check"));
    assert!(text.contains("[PASS] amalgam-two-classes"));
    assert!(text.trim_end().ends_with("2 passed, 0 failed"));
}

#[test]
fn verify_json_report() {
    let o = run(&["verify", "steiner-build", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["format"], "m12sl3-verify-report");
    assert_eq!(v["version"], 1);
    assert_eq!(v["pass"], true);
    let s = &v["scenarios"][0];
    assert_eq!(s["scenario"], "steiner-build");
    assert!(s["wall_ms"].is_number());
    assert!(s["claims"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn no_timing_is_deterministic() {
    let args = ["verify", "sl3-geometry", "free-identities", "--format", "json", "--no-timing"];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v["scenarios"][0].get("wall_ms").is_none());
}

#[test]
fn cap_failure_exits_one() {
    let o = run(&["verify", "presentation-orders", "--max-cosets", "50"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[FAIL] presentation-orders"));
}

#[test]
fn config_overrides_per_scenario() {
    let cfg = scratch("cfg.toml", "strategy = \"felsch\"\n\n[scenarios.presentation-orders]\nmax_cosets = 40\n");
    let o = run(&["verify", "presentation-orders", "theta-check", "--config", cfg.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let s = &v["scenarios"];
    assert_eq!(s[0]["settings"]["max_cosets"], 40);
    assert_eq!(s[0]["settings"]["strategy"], "felsch");
    assert_eq!(s[0]["pass"], false);
    assert_eq!(s[1]["pass"], true);
    assert_eq!((v["passed"].as_u64(), v["failed"].as_u64()), (Some(1), Some(1)));
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(run(&["verify", "no-such-scenario"]).status.code(), Some(2));
    let cfg = scratch("bad.toml", "[scenarios.no-such-scenario]\nmax_cosets = 10\n");
    assert_eq!(run(&["verify", "all", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    let typo = scratch("typo.toml", "max_coset = 10\n");
    assert_eq!(run(&["verify", "theta-check", "--config", typo.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--catalog", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--catalog", "F", "--max-cosets", "1000"]).status.code(), Some(2));
}

#[test]
fn enumerate_catalog_and_file() {
    let o = run(&["enumerate", "--catalog", "AGL23"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("index 9\n"));

    let pres = scratch("d5.txt", "gens a, b; rels a^5; b^2; (a b)^2");
    let dump = std::env::temp_dir().join(format!("m12sl3-cli-{}", std::process::id())).join("d5.json");
    let path = pres.to_str().unwrap();
    let o = run(&["enumerate", "--presentation", path, "--subgroup", "b", "--format", "json", "--dump", dump.to_str().unwrap()]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["index"], 5);
    assert!(fs::metadata(&dump).unwrap().len() > 0);
    let felsch = run(&["enumerate", "--presentation", path, "--strategy", "felsch"]);
    assert!(stdout(&felsch).starts_with("index 10\n"));
}

#[test]
fn order_of_generator_file() {
    let gens = scratch("m.txt", "# Sym(4) on 4 points, plus a fixed point\ndegree 5\na: (1,2,3,4)\n(1,2)\n");
    let o = run(&["order", "--generators", gens.to_str().unwrap(), "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["order"], 24);
    assert_eq!(v["degree"], 5);
    assert_eq!(v["transitive"], false);

    let psl = scratch("psl.txt", "(1,2,3,4,5,6,7)\n(2,3,5)(4,7,6)\n(1,2)(3,6)\n");
    let o = run(&["order", "--generators", psl.to_str().unwrap()]);
    let text = stdout(&o);
    assert!(text.starts_with("order 168\n"), "{text}");
}
