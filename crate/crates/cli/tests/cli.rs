use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_inducibility"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn fraction(v: &Value) -> (String, String) {
    (v["num"].as_str().unwrap().to_string(), v["den"].as_str().unwrap().to_string())
}

fn value_of<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["values"].as_array().unwrap().iter().find(|v| v["type"] == name).unwrap()
}

#[test]
fn nested_profile_of_paley9() {
    let r = json(&["nested-profile", "--t", "4", "tensor(K3,K3)"]);
    assert_eq!(r["command"], "nested-profile");
    assert_eq!(r["t"], 4);
    let names = ["K4", "A4", "T4", "S4", "M4", "C4", "Q4", "V4", "D4", "E4", "P4"];
    let expected = [17, 17, 50, 50, 51, 51, 150, 150, 48, 48, 96];
    assert_eq!(r["basis"].as_array().unwrap().len(), 11);
    for (name, e) in names.iter().zip(expected) {
        let (num, den) = fraction(value_of(&r, name));
        let (num, den): (u64, u64) = (num.parse().unwrap(), den.parse().unwrap());
        assert_eq!(num * 728, e * den, "{name}");
    }
}

#[test]
fn headline_values() {
    let eq2 = json(&["limit", "--t", "4", "--quantum", "P4", "--factors", "K4", "--nested", "tensor(K3,K3)"]);
    assert_eq!(fraction(&eq2["values"][0]), ("1173".into(), "5824".into()));
    let eq1 = json(&["limit", "--quantum", "K4+A4", "--factors", "M4,K4", "--nested", "tensor(K3, K3)"]);
    assert_eq!(fraction(&eq1["values"][0]), ("1411".into(), "46592".into()));
    let finite = json(&["density", "--t", "4", "--quantum", "K4+A4", "tensor(M4,K4,K3,K3)"]);
    assert_eq!(fraction(&finite["values"][0]), ("11411".into(), "373248".into()));
    let g18 = json(&["limit", "--quantum", "K4+A4", "--factors", "M4, K4, compose(tensor(K3,K3),K2)"]);
    assert_eq!(fraction(&g18["values"][0]), ("3769".into(), "124416".into()));
}

#[test]
fn profile_flavors() {
    let r = json(&["profile", "--t", "4", "K4"]);
    assert_eq!(fraction(value_of(&r, "C4")), ("9".into(), "64".into()));
    let induced = json(&["profile", "--t", "4", "--flavor", "induced", "C5"]);
    assert_eq!(fraction(value_of(&induced, "P4")), ("1".into(), "1".into()));
    let labeled = json(&["profile", "--t", "2", "--flavor", "labeled", "bernoulli(1/3)"]);
    assert_eq!(fraction(value_of(&labeled, "{1-2}")), ("1".into(), "3".into()));
    let spectral = json(&["profile", "--t", "2", "--flavor", "spectral", "bernoulli(1/2)"]);
    assert_eq!(fraction(value_of(&spectral, "{1-2}")), ("0".into(), "1".into()));
    assert!(!run(&["profile", "--t", "3", "--flavor", "induced", "bernoulli(1/2)"]).status.success());
}

#[test]
fn approximate_mode() {
    let r = json(&[
        "density", "--t", "5", "--approx", "--quantum", "{1-2,1-3,2-3,1-4,2-4,3-4}",
        "union(loopK1:1, loopK1:alpha)",
    ]);
    assert!(r["values"][0]["num"].is_null());
    assert!((r["values"][0]["approx"].as_f64().unwrap() - 5.0 / 12.0).abs() < 1e-9);
    assert_eq!(r["meta"]["approx"], true);
    assert!(!run(&["density", "--t", "5", "--quantum", "A5", "union(loopK1:1, loopK1:alpha)"]).status.success());
}

#[test]
fn bounds_and_convert() {
    let b = json(&["bounds", "--t", "4"]);
    assert_eq!(fraction(value_of(&b, "path_lower")), ("6".into(), "31".into()));
    assert_eq!(fraction(value_of(&b, "path_upper")), ("4".into(), "9".into()));
    let c = json(&["convert", "--encode", "C5"]);
    let g6 = c["graph"]["graph6"].as_str().unwrap().to_string();
    let back = json(&["convert", "--graph6", &g6]);
    assert_eq!(back["graph"], c["graph"]);
    assert_eq!(back["graph"]["order"], 5);
    assert!(!run(&["convert", "--encode", "bernoulli(1/2)"]).status.success());
}

#[test]
fn errors_exit_nonzero_with_positions() {
    let out = run(&["profile", "--t", "3", "blowup(K3)"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("blowup"));
    let out = run(&["profile", "--t", "3", "tensor(K3,"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("1:"));
    assert!(!run(&["profile", "--t", "3", "paley(7)"]).status.success());
    assert!(!run(&["profile", "--t", "5", "--budget", "10", "K5"]).status.success());
    assert!(!run(&["nested-profile", "--t", "4", "bernoulli(1/2)"]).status.success());
}

#[test]
fn tables_pass() {
    let out = run(&["tables", "--which", "headline", "--format", "table"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("1173/5824"));
    assert!(!text.contains("fail"));
    let r = json(&["tables", "--which", "exoo4"]);
    assert_eq!(r["rows"].as_array().unwrap().len(), 5);
}

#[test]
fn output_is_deterministic_and_cache_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["estimate", "--t", "4", "--samples", "20000", "--seed", "9", "C5"];
    let plain = run(&args).stdout;
    assert_eq!(plain, run(&args).stdout);
    let mut cached_args = args.to_vec();
    cached_args.extend(["--cache", cache]);
    let miss = run(&cached_args).stdout;
    let entries = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(entries, 1);
    let hit = run(&cached_args).stdout;
    assert_eq!(plain, miss);
    assert_eq!(miss, hit);
    // an equivalent spelling of the expression reuses the entry
    run(&["estimate", "--t", "4", "--samples", "20000", "--seed", "9", "  C5 ", "--cache", cache]);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    run(&["estimate", "--t", "4", "--samples", "20000", "--seed", "10", "C5", "--cache", cache]);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn loaded_graphs_and_cache_keys() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.g6");
    let cache = dir.path().join("cache");
    let c5 = json(&["convert", "--encode", "C5"])["graph"]["graph6"].as_str().unwrap().to_string();
    std::fs::write(&file, format!("{c5}\n")).unwrap();
    let expr = format!("load({:?})", file.to_str().unwrap());
    let args = |cache: &Path| {
        vec!["profile".to_string(), "--t".into(), "4".into(), expr.clone(), "--cache".into(), cache.to_str().unwrap().into()]
    };
    let first = run(&args(&cache).iter().map(String::as_str).collect::<Vec<_>>());
    assert!(first.status.success(), "{}", String::from_utf8_lossy(&first.stderr));
    // the same path with different contents must not hit the old entry
    let k4 = json(&["convert", "--encode", "K4"])["graph"]["graph6"].as_str().unwrap().to_string();
    std::fs::write(&file, k4).unwrap();
    let second = run(&args(&cache).iter().map(String::as_str).collect::<Vec<_>>());
    assert_ne!(first.stdout, second.stdout);
}
