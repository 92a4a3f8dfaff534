//! End-to-end runs of the `parasimplex` binary: outputs and exit codes.

use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parasimplex"))
        .args(args)
        .env_remove("PARASIMPLEX_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).expect("one JSON value per line")).collect()
}

/// Report lines with the timing field removed.
fn untimed(o: &Output) -> Vec<Value> {
    json_lines(o)
        .into_iter()
        .map(|mut v| {
            v.as_object_mut().expect("records are objects").remove("elapsed_ms");
            v
        })
        .collect()
}

#[test]
fn para_reports_the_operations() {
    let o = run(&["--json", "para", "4", "0", "1", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = &json_lines(&o)[0];
    assert_eq!(v["duality"]["coords"], serde_json::json!([2, 3, 4]));
    assert_eq!(v["injective"], Value::Bool(true));
    assert_eq!(v["inj_iso"]["coords"], serde_json::json!([0, 2, 4]));
    assert_eq!(v["shift"]["power"], Value::from(0));
}

#[test]
fn parameters_above_the_cap_are_usage_errors() {
    assert_eq!(run(&["para", "17", "0", "1"]).status.code(), Some(2));
    assert_eq!(run(&["poset", "2", "17"]).status.code(), Some(2));
    assert_eq!(run(&["snk", "17", "2"]).status.code(), Some(2));
}

#[test]
fn inadmissible_coordinates_are_usage_errors() {
    let o = run(&["para", "1", "1", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not admissible"));
}

#[test]
fn poset_as_json_and_dot() {
    let o = run(&["--json", "poset", "2", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = &json_lines(&o)[0];
    assert_eq!(v["elements"].as_array().unwrap().len(), 8);
    let injective = v["injective"].as_array().unwrap().iter().filter(|b| b.as_bool().unwrap()).count();
    assert_eq!(injective, 6);

    let dot = stdout(&run(&["--dot", "poset", "1", "2"]));
    assert!(dot.starts_with("digraph poset {"));
    assert!(dot.contains("n0 -> n1;"));
}

#[test]
fn dot_is_rejected_where_it_has_no_meaning() {
    assert_eq!(run(&["--dot", "chain"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["--prime", "4", "chain"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(run(&["toda", "2"]).status.code(), Some(2));
    assert_eq!(run(&["snk"]).status.code(), Some(2));
}

#[test]
fn random_objects_pass_their_checks() {
    for args in [
        &["--json", "--trials", "2", "snk", "1", "2"][..],
        &["--json", "--trials", "2", "phi", "2", "2"],
        &["--json", "--trials", "2", "--prime", "5", "toda", "3"],
        &["--json", "--trials", "2", "filter", "2"],
        &["--json", "--trials", "2", "triangle", "1", "3"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let lines = json_lines(&o);
        assert_eq!(lines.len(), 2, "{args:?}");
        assert!(lines.iter().all(|v| v["passed"] == Value::Bool(true)), "{args:?}");
    }
}

#[test]
fn phi_image_feeds_back_as_input() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["--json", "--seed", "4", "phi", "1", "3", "--emit"]);
    assert_eq!(o.status.code(), Some(0));
    let image = json_lines(&o)[0]["image"].clone();
    assert_eq!(image["n"], Value::from(2));
    assert_eq!(image["k"], Value::from(2));
    let path = dir.path().join("image.json");
    fs::write(&path, image.to_string()).unwrap();
    let back = run(&["--json", "phi", "--input", path.to_str().unwrap()]);
    assert_eq!(back.status.code(), Some(0));
    assert_eq!(json_lines(&back)[0]["round_trip"]["passed"], Value::Bool(true));
}

#[test]
fn verify_writes_a_jsonl_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.jsonl");
    let o = run(&["verify", "--suite", "counting", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&path).unwrap();
    let ids: Vec<String> = text
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap()["id"].as_str().unwrap().to_owned())
        .collect();
    assert_eq!(ids, ["counting.injective", "counting.pascal"]);
    assert!(stdout(&o).contains("2 checks, 2 passed, 0 failed"));
}

#[test]
fn verify_reports_repeat_for_equal_seeds() {
    let args = ["--json", "--seed", "11", "--trials", "3", "verify", "--suite", "cubes"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(untimed(&a), untimed(&b));
}

#[test]
fn seed_falls_back_to_the_environment() {
    let flag = run(&["--json", "--seed", "5", "--trials", "2", "verify", "--suite", "toda"]);
    let env = Command::new(env!("CARGO_BIN_EXE_parasimplex"))
        .args(["--json", "--trials", "2", "verify", "--suite", "toda"])
        .env("PARASIMPLEX_SEED", "5")
        .output()
        .unwrap();
    assert_eq!(untimed(&flag), untimed(&env));
}

#[test]
fn verify_reads_a_config_and_rejects_unknown_fields() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    fs::write(&good, r#"{"suite":"counting","seed":3}"#).unwrap();
    assert_eq!(run(&["verify", "--config", good.to_str().unwrap()]).status.code(), Some(0));

    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"suite":"counting","colour":"red"}"#).unwrap();
    let o = run(&["verify", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("colour"));

    let capped = dir.path().join("capped.json");
    fs::write(&capped, r#"{"suite":"paramap","n_max":40}"#).unwrap();
    assert_eq!(run(&["verify", "--config", capped.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_lists_the_registry() {
    let o = run(&["verify", "--list"]);
    let names: Vec<&str> = std::str::from_utf8(&o.stdout)
        .unwrap()
        .lines()
        .map(|l| l.split_whitespace().next().unwrap())
        .collect();
    assert_eq!(names, ["counting", "cubes", "duality", "io", "paramap", "snk", "toda"]);
}

#[test]
fn io_canonicalizes_and_locates_errors() {
    let dir = tempfile::tempdir().unwrap();
    let shuffled = dir.path().join("map.json");
    fs::write(&shuffled, r#"{ "n": 4, "coords": [0, 1, 2], "k": 2 }"#).unwrap();
    let o = run(&["--json", "io", shuffled.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), r#"{"coords":[0,1,2],"k":2,"n":4}"#);

    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"n":1,"k":1,"coords":[1,0]}"#).unwrap();
    let o = run(&["io", bad.to_str().unwrap(), "--kind", "para_map"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("coords:"));

    let truncated = dir.path().join("truncated.json");
    fs::write(&truncated, "{\"n\":1,\n\"k\":").unwrap();
    let o = run(&["io", truncated.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}
