use std::path::Path;
use std::process::{Command, Output};

use colourlab_core::graph::{read_graph, write_graph};
use serde_json::Value;

fn colourlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_colourlab"))
        .args(args)
        .env_remove("COLOURLAB_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const K4: &str = "4 6 simple\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";

#[test]
fn k4_has_no_3_colourings() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "k4.edges", K4);
    let out = colourlab(&["count", "--graph", &g, "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["count"], "0");
    let out = colourlab(&["count", "--graph", &g, "--k", "4", "--omega", "1"]);
    let v = stdout_json(&out);
    assert_eq!(v["count"], "24");
    assert_eq!(v["balanced_count"], "24");
}

#[test]
fn alpha_at_d2_k3() {
    let out = colourlab(&["moment", "--name", "alpha", "--d", "2", "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["name"], "alpha");
    // ln 3 + ln(2/3) = ln 2.
    let value = v["value"].as_f64().unwrap();
    assert!((value - 0.6931472).abs() < 5e-8);
    assert_eq!(v["value"].to_string(), "0.693147181");
}

#[test]
fn moments_report_log_values() {
    let out = colourlab(&[
        "moment",
        "--name",
        "first_total",
        "--n",
        "3",
        "--m",
        "3",
        "--k",
        "3",
    ]);
    let v = stdout_json(&out);
    // 6 injective maps survive surely; the 18 maps with a 2+1 split survive
    // each draw with probability 2/3.
    let brute: f64 = 6.0 + 18.0 * (2.0f64 / 3.0).powi(3);
    assert!((v["log_value"].as_f64().unwrap() - brute.ln()).abs() < 1e-8);
    assert_eq!(v["params"]["m"], 3);
}

#[test]
fn sampled_graph_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.edges");
    let col = dir.path().join("g.colouring");
    let out = colourlab(&[
        "sample",
        "--model",
        "planted",
        "--n",
        "12",
        "--d",
        "1.5",
        "--k",
        "3",
        "--seed",
        "4",
        "--out",
        path.to_str().unwrap(),
        "--colouring-out",
        col.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(&path).unwrap();
    let g = read_graph(&text).unwrap();
    assert_eq!(g.m(), 9);
    assert_eq!(write_graph(&g), text);
    assert_eq!(
        std::fs::read_to_string(&col)
            .unwrap()
            .split_whitespace()
            .count(),
        12
    );
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |tag: &str| {
        let p = dir.path().join(tag);
        let out = colourlab(&[
            "experiment",
            "--name",
            "planted_cycles",
            "--n",
            "99",
            "--n-list",
            "30,60",
            "--d",
            "2",
            "--trials",
            "200",
            "--seed",
            "9",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert!(out.status.code() == Some(0) || out.status.code() == Some(1));
        std::fs::read(p).unwrap()
    };
    let (a, b) = (run("a.jsonl"), run("b.jsonl"));
    assert!(!a.is_empty());
    assert_eq!(a, b);

    let sample = || {
        colourlab(&[
            "sample", "--model", "gnm", "--n", "50", "--m", "40", "--seed", "1",
        ])
        .stdout
    };
    assert_eq!(sample(), sample());
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_colourlab"))
        .args([
            "experiment",
            "--name",
            "contiguity_enum",
            "--seed",
            "3",
            "--format",
            "csv",
        ])
        .env("COLOURLAB_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let csv = std::fs::read_to_string(dir.path().join("contiguity_enum-seed3.csv")).unwrap();
    assert!(csv.starts_with("experiment,statistic,value,reference,tolerance,verdict\n"));
    assert!(csv
        .lines()
        .skip(1)
        .all(|l| l.starts_with("contiguity_enum,")));
}

#[test]
fn poisson_cycles_example_passes() {
    let out = colourlab(&[
        "experiment",
        "--name",
        "poisson_cycles",
        "--n",
        "1000",
        "--d",
        "2",
        "--L",
        "3",
        "--trials",
        "10000",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["params"]["m"], 1000);
}

#[test]
fn failed_verdict_exits_1() {
    let out = colourlab(&[
        "experiment",
        "--name",
        "limit_distribution",
        "--n-list",
        "6,9",
        "--d",
        "1",
        "--trials",
        "200",
        "--w-trials",
        "2000",
        "--seed",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["verdict"], "fail");
}

#[test]
fn usage_errors_exit_2() {
    let cases: [&[&str]; 6] = [
        &["frobnicate"],
        &["count", "--graph", "x.edges", "--k", "3", "--bogus"],
        &["sample", "--model", "gnm", "--n", "5", "--seed", "1"],
        &[
            "sample", "--model", "gnm", "--n", "5", "--m", "3", "--d", "1", "--seed", "1",
        ],
        &["experiment", "--name", "poisson_cycles", "--n", "10"],
        &["moment", "--name", "alpha", "--d", "2"],
    ];
    for args in cases {
        let out = colourlab(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn malformed_graph_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "bad.edges", "3 2\n1 2\n1 x\n");
    let out = colourlab(&["census", "--graph", &g, "--L", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn census_of_k4() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "k4.edges", K4);
    let v = stdout_json(&colourlab(&["census", "--graph", &g, "--L", "4"]));
    // C(4,3) triangles and 3 Hamilton cycles.
    assert_eq!(v["counts"], serde_json::json!([0, 4, 3]));
    assert_eq!(v["intersecting"], true);
}
