use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monochrome"))
        .args(args)
        .current_dir(dir)
        .env_remove("MONOCHROME_WORKERS")
        .output()
        .unwrap()
}

fn json_out(args: &[&str], dir: &Path) -> Value {
    let out = run(args, dir);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn birthday_examples() {
    let dir = tempfile::tempdir().unwrap();
    let v = json_out(&["birthday", "--people", "23", "--days", "365"], dir.path());
    assert!((v["exact"].as_f64().unwrap() - 0.492703).abs() < 1e-6);
    assert!((v["poisson_approx"].as_f64().unwrap() - (-253.0f64 / 365.0).exp()).abs() < 1e-12);
    assert_eq!(v["threshold_people"], 23);
    let v = json_out(&["birthday", "--lambda-from", "--edges", "1.2e11", "--days-power", "365:4"], dir.path());
    assert!((v["lambda"].as_f64().unwrap() - 6.76).abs() < 0.01);
    assert!((v["match_prob"].as_f64().unwrap() - 0.9988).abs() < 1e-4);
}

#[test]
fn simulate_then_compare_with_manifests() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let sim = [
        "simulate", "--graph", "complete:60", "--colors", "1770", "--stat", "edges", "--samples", "100000", "--seed", "1",
        "--out", "sim.csv",
    ];
    assert!(run(&sim, p).status.success());
    let manifest: Value = serde_json::from_str(&std::fs::read_to_string(p.join("sim.csv.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["schema"], "monochrome.manifest/1");
    assert_eq!(manifest["config"]["command"]["seed"], 1);
    assert!(manifest["wall_time_seconds"].as_f64().unwrap() >= 0.0);

    assert!(run(&["limit", "--graph", "complete:60", "--growing", "0.9997", "--out", "law.json"], p).status.success());
    let law: Value = serde_json::from_str(&std::fs::read_to_string(p.join("law.json")).unwrap()).unwrap();
    assert_eq!(law["limit"]["law"], "Poisson");

    let v = json_out(&["compare", "--empirical", "sim.csv", "--law", "law.json", "--tol", "0.02"], p);
    assert_eq!(v["metric"], "tv");
    assert!(v["statistic"].as_f64().unwrap() < 0.02);

    let strict = run(&["compare", "--empirical", "sim.csv", "--law", r#"{"law":"Poisson","lambda":3.0}"#, "--tol", "0.02"], p);
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn outputs_do_not_depend_on_workers() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let base = ["simulate", "--graph", "er:40:0.2:seed3", "--colors", "3", "--samples", "20000", "--seed", "5"];
    let one = run(&[&base[..], &["--workers", "1"]].concat(), p);
    let four = run(&[&base[..], &["--workers", "4"]].concat(), p);
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_monochrome")).args(base).env("MONOCHROME_WORKERS", "2").output().unwrap();
    assert_eq!(one.stdout, env.stdout);

    let law = ["limit", "--graph", "bipartite:30:30", "--colors", "3", "--sample", "1000", "--seed", "2"];
    let a = run(&[&law[..], &["--workers", "1"]].concat(), p);
    let b = run(&[&law[..], &["--workers", "3"]].concat(), p);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn generate_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert!(run(&["generate", "--graph", "gadget:5:3:3", "--out", "g.txt"], p).status.success());
    let text = std::fs::read_to_string(p.join("g.txt")).unwrap();
    assert!(text.starts_with("21 35\n"));
    let v = json_out(&["census", "--graph", "g.txt", "--tuples", "1", "--cycles", "4"], p);
    assert_eq!(v["schema"], "monochrome.census/1");
    assert_eq!(v["total"], 35);
    assert_eq!(v["cycles"]["3"], 15);
    // Two triangles on the same path edge form a 4-cycle.
    assert_eq!(v["cycles"]["4"], 5 * 3);

    let exact = run(&["exact", "--graph", "g.txt", "--colors", "2"], p);
    let body = String::from_utf8(exact.stdout).unwrap();
    assert!(body.starts_with("value,probability\n"));
    assert!(body.lines().skip(1).all(|l| l.split(',').nth(1).unwrap().contains('/') || l.ends_with(",1")));
}

#[test]
fn extremal_spectrum_moments_limit() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let v = json_out(&["extremal", "--graph", "cycle:5"], p);
    assert_eq!(v["gamma"], "5/2");
    assert_eq!(v["phi"], serde_json::json!(["1/2", "1/2", "1/2", "1/2", "1/2"]));
    assert_eq!(v["structure"]["union_of_stars"], false);

    let v = json_out(&["extremal", "--graph", "star:50", "--conditions"], p);
    assert!((v["conditions"]["usn_ratio"].as_f64().unwrap() - 0.5f64.sqrt()).abs() < 1e-9);

    let out = run(&["spectrum", "--graph", "complete:4"], p);
    let text = String::from_utf8(out.stdout).unwrap();
    let values: Vec<f64> = text.lines().skip(2).map(|l| l.parse().unwrap()).collect();
    assert!((values[0] - 3.0).abs() < 1e-10 && values[1..].iter().all(|x| (x + 1.0).abs() < 1e-10));

    let v = json_out(&["moments", "--graph", "cycle:4", "--colors", "2", "--kind", "central-z", "--fourth"], p);
    assert_eq!(v["fourth"]["exact"], "1");
    assert_eq!(v["moments"][1]["value"], "1/2");

    let v = json_out(&["limit", "--graph", "regular:200:3:seed1", "--colors", "2"], p);
    assert_eq!(v["limit"]["law"], "Normal");
    assert_eq!(v["limit"]["var"], 0.5);
    let v = json_out(&["limit", "--graph", "bipartite:2:300", "--colors", "3"], p);
    assert!(v["limit"].is_null());
    assert!(v["ambiguous"].is_string());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert_eq!(run(&["simulate", "--graph", "nonsense:3", "--colors", "2", "--seed", "1"], p).status.code(), Some(2));
    assert_eq!(run(&["simulate", "--graph", "complete:5"], p).status.code(), Some(2));
    assert_eq!(run(&["exact", "--graph", "complete:30", "--colors", "3"], p).status.code(), Some(3));
    assert_eq!(run(&["census", "--graph", "complete:5", "--cycles", "9"], p).status.code(), Some(2));
    let err = run(&["generate", "--graph", "regular:5:3:seed1"], p);
    assert_eq!(err.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&err.stderr).contains("error:"));
}
