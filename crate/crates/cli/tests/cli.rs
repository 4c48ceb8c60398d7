use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_critgraph"));
    c.env_remove("CRITGRAPH_WORKERS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

#[test]
fn bounds_report() {
    let v = json(&run(&["bounds", "--k", "4", "--n", "6"]));
    assert_eq!(v["schema"], 1);
    assert_eq!(v["F"], 10);
    assert_eq!(v["gallai_exact"], 10);
    let table = json(&run(&["bounds", "--k", "5", "--n", "7", "--n-to", "9"]));
    assert_eq!(table["records"].as_array().unwrap().len(), 3);
    let bad = run(&["bounds", "--k", "3", "--n", "6"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn generate_extremal() {
    let v = json(&run(&["generate-extremal", "--n", "9"]));
    assert_eq!(v["graph"]["m"], 15);
    assert_eq!(v["F"], 15);
    assert_eq!(v["certificate_valid"], true);
    assert_eq!(v["certificate"]["per_edge"].as_array().unwrap().len(), 15);
    let none = run(&["generate-extremal", "--n", "5"]);
    assert_eq!(none.status.code(), Some(1));
    assert!(none.stdout.is_empty());
}

#[test]
fn critical_check_on_files() {
    let k4 = scratch("k4.g6", "C~\n");
    let v = json(&run(&[
        "critical-check",
        "--k",
        "4",
        "--in",
        k4.to_str().unwrap(),
    ]));
    assert_eq!(v["critical"], true);
    let cert = scratch("k4-cert.json", &v["certificate"].to_string());
    let v = json(&run(&[
        "critical-check",
        "--in",
        k4.to_str().unwrap(),
        "--certificate",
        cert.to_str().unwrap(),
    ]));
    assert_eq!(v["certificate_valid"], true);

    // C5 is 3-critical, not 4-critical; as DIMACS
    let c5 = scratch(
        "c5.col",
        "c five-cycle\np edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n",
    );
    let v = json(&run(&[
        "critical-check",
        "--k",
        "4",
        "--in",
        c5.to_str().unwrap(),
    ]));
    assert_eq!(v["critical"], false);
    let v = json(&run(&[
        "critical-check",
        "--k",
        "3",
        "--in",
        c5.to_str().unwrap(),
    ]));
    assert_eq!(v["critical"], true);
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(
        run(&["color", "--in", "/nonexistent/graph.g6"])
            .status
            .code(),
        Some(2)
    );
    let junk = scratch("junk.g6", "C\u{7f}\n");
    assert_eq!(
        run(&["color", "--in", junk.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn potential_and_gadget() {
    let v = json(&run(&["potential", "--in", "K4"]));
    assert_eq!(v["report"]["rho"], 2);
    let v = json(&run(&[
        "potential",
        "--in",
        "K4",
        "--method",
        "flow",
        "--min-size",
        "2",
    ]));
    assert_eq!(v["report"]["rho"], 2);
    assert_eq!(v["report"]["method"], "flow");
    let v = json(&run(&["potential", "--in", "K4", "--set", "0,1,2"]));
    assert_eq!(v["rho"], 6);
    assert_eq!(
        run(&["potential", "--in", "K4", "--set", "7"])
            .status
            .code(),
        Some(1)
    );

    let v = json(&run(&[
        "y-gadget", "--in", "K4", "--set", "0,1", "--phi", "1,2",
    ]));
    assert_eq!(v["chromatic_number"], 4);
    assert_eq!(v["gadget"]["Ri_sets"][2], serde_json::json!([]));
    let bad = run(&["y-gadget", "--in", "K4", "--set", "0,1", "--phi", "1,1"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn hajos_and_structure() {
    let v = json(&run(&[
        "hajos",
        "--g1",
        "K4",
        "--e1",
        "0,1",
        "--g2",
        "K4",
        "--e2",
        "2,3",
        "--certify",
        "4",
    ]));
    assert_eq!(v["graph"]["n"], 7);
    assert_eq!(v["graph"]["m"], 11);
    assert_eq!(v["critical"], true);

    let v = json(&run(&["analyze", "--in", "W5"]));
    assert_eq!(
        v["report"]["property41_violations"]
            .as_array()
            .unwrap()
            .len(),
        5
    );
    let v = json(&run(&["discharge", "--in", "K4"]));
    assert_eq!(v["bound"]["verdict"], "not_applicable");
    assert_eq!(v["charges"]["total"], "12");
}

#[test]
fn search_and_budget() {
    let v = json(&run(&["search-min-edges", "--n", "6"]));
    assert_eq!(v["min_edges_found"], 10);
    assert_eq!(
        run(&["search-min-edges", "--n", "9"]).status.code(),
        Some(1)
    );
    let slow = run(&[
        "--budget",
        "0.001",
        "search-min-edges",
        "--n",
        "9",
        "--stretch",
    ]);
    assert_eq!(slow.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&slow.stderr).contains("budget"));
}

#[test]
fn grotzsch_with_trace_and_out_file() {
    // cube graph
    let q3 = scratch("q3.g6", "G?zTb_\n");
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("q3-coloring.json");
    let res = run(&[
        "grotzsch",
        "--in",
        q3.to_str().unwrap(),
        "--emit-trace",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(res.status.success());
    assert!(res.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["verified"], true);
    assert_eq!(v["coloring"].as_object().unwrap().len(), 8);
    assert!(v["trace"]["steps"].is_array());
    assert_eq!(run(&["grotzsch", "--in", "K4"]).status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "--seed",
        "17",
        "y-gadget",
        "--in",
        "E8",
        "--set",
        "0,1,2,3,4",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let one = bin()
        .env("CRITGRAPH_WORKERS", "1")
        .args(["search-min-edges", "--n", "7"])
        .output()
        .unwrap();
    let many = run(&["--workers", "4", "search-min-edges", "--n", "7"]);
    assert_eq!(one.stdout, many.stdout);
    let bad = bin()
        .env("CRITGRAPH_WORKERS", "lots")
        .args(["bounds", "--k", "4", "--n", "6"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
