use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linktile")).args(args).env_remove("LT_FIELD").output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn tmp(name: &str) -> String {
    let dir = std::env::temp_dir().join(format!("linktile-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn verify_accepts_the_three_vertex_net() {
    for field in ["rational", "prime"] {
        let out = run(&["--field", field, "verify", &data("eh3.json")]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["passed"], true);
    }
}

#[test]
fn verify_reports_a_broken_net_with_exit_one() {
    let out = run(&["verify", &data("eh3_broken.json")]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["passed"], false);
    let failed: Vec<&str> =
        v["clauses"].as_array().unwrap().iter().filter(|c| c["status"] != "pass").map(|c| c["name"].as_str().unwrap()).collect();
    assert!(failed.contains(&"circuit vanishing"), "{failed:?}");
    // downstream commands refuse and print the failing report
    assert_eq!(run(&["tiling", &data("eh3_broken.json")]).status.code(), Some(1));
}

#[test]
fn chow_gives_three_singletons() {
    let out = run(&["chow", &data("eh3.json")]);
    assert_eq!(out.status.code(), Some(0));
    let mut entries: Vec<(String, Value, Value)> = json(&out)
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["component"].as_str().unwrap().to_string(), e["q"].clone(), e["multiplicity"].clone()))
        .collect();
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    let one = serde_json::json!(1);
    assert_eq!(
        entries,
        vec![
            ("z0".to_string(), serde_json::json!([1, 0, 0]), one.clone()),
            ("z1".to_string(), serde_json::json!([0, 1, 0]), one.clone()),
            ("z2".to_string(), serde_json::json!([0, 0, 1]), one),
        ]
    );
}

#[test]
fn generated_net_tiles_the_simplex() {
    let net = tmp("generated.json");
    let out = run(&["-o", &net, "generate", "monomial", &data("eh3_forms.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&["tiling", &net]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
    let out = run(&["--format", "markdown", "analyze", &net]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("reduction complex"));
}

#[test]
fn random_generation_is_byte_identical() {
    let args = ["generate", "random", "--seed", "7", "--types", "3", "--dim", "2", "--twist"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let net = tmp("random.json");
    std::fs::write(&net, &a.stdout).unwrap();
    let t1 = run(&["tiling", &net]);
    let t2 = run(&["tiling", &net]);
    assert_eq!(t1.status.code(), Some(0));
    assert_eq!(t1.stdout, t2.stdout);
}

#[test]
fn bad_input_exits_two() {
    let bad = tmp("bad.json");
    std::fs::write(&bad, "{\"x\": 1}").unwrap();
    let out = run(&["verify", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert_eq!(run(&["verify", &tmp("missing.json")]).status.code(), Some(2));
    assert_eq!(run(&["--field", "prime:4", "verify", &data("eh3.json")]).status.code(), Some(2));
}

#[test]
fn chipfire_extremes_are_reduced() {
    let out = run(&["chipfire", &data("banana.json"), "--divisor", "2,0", "--extreme"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for e in v["extreme"].as_array().unwrap() {
        assert_eq!(e["agree"], true);
    }
    let out = run(&["chipfire", &data("banana.json"), "--divisor", "2,0", "--reduced", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["reduced"], serde_json::json!([0, 2]));
}

#[test]
fn quiver_extreme_vertices_on_a_line() {
    let out = run(&["quiver", "extreme", "--vertices", "0,0;1,0;2,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["extreme"], serde_json::json!([[0, 0], [2, 0]]));
    let out = run(&["quiver", "shadow", "--vertices", "0,0;1,0;2,0", "--target", "5,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["shadow"], serde_json::json!([2, 0]));
}
