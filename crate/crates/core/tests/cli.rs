mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use common::fixture;
use polydyn::cli::mean_indegree;
use polydyn::translate::ModelDocument;

fn polydyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polydyn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(name: &str) -> String {
    fixture(name).to_str().unwrap().to_string()
}

const APPENDIX_REPORT: &str = "steady states: 1\n000\n2-cycles: 0\n3-cycles: 1\n010 111 011\n";

#[test]
fn analyze_prints_attractors() {
    let o = polydyn(&["analyze", &path("appendix.txt"), "--cycles", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), APPENDIX_REPORT);
    let o = polydyn(&[
        "analyze",
        &path("appendix.txt"),
        "--cycles",
        "3",
        "--mode",
        "simulation",
    ]);
    assert_eq!(stdout(&o), APPENDIX_REPORT);
    let o = polydyn(&["analyze", &path("appendix_boolean.txt"), "--cycles", "3"]);
    assert_eq!(stdout(&o), APPENDIX_REPORT);
    let o = polydyn(&["analyze", &path("appendix.txt")]);
    assert_eq!(stdout(&o), "steady states: 1\n000\n");
}

#[test]
fn analyze_with_a_schedule() {
    let o = polydyn(&["analyze", &path("appendix.txt"), "--schedule", "3,1,2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "steady states: 1\n000\n");
    let o = polydyn(&["analyze", &path("appendix.txt"), "--schedule", "1,1,2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn analyze_probabilistic_and_logical_models() {
    let o = polydyn(&["analyze", &path("probabilistic.txt"), "--cycles", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "steady states: 2\n00\n11\n");
    assert!(stderr(&o).contains("note:"));
    let o = polydyn(&["analyze", &path("table2.txt")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "steady states: 4\n00\n01\n02\n12\n");
}

#[test]
fn input_errors_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "KIND polynomial\nSTATES 2\nf1 = x1 +* x2\n").unwrap();
    let o = polydyn(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3, column 10"), "{}", stderr(&o));

    fs::write(&bad, [0xff, 0xfe, b'\n']).unwrap();
    let o = polydyn(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let o = polydyn(&["analyze", dir.path().join("missing.txt").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = polydyn(&["analyze"]);
    assert_eq!(o.status.code(), Some(2));
    let o = polydyn(&["analyze", &path("appendix.txt"), "--mode", "guess"]);
    assert_eq!(o.status.code(), Some(2));
    let o = polydyn(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("analyze"));
}

#[test]
fn caps_exit_with_3() {
    let o = polydyn(&["analyze", &path("appendix.txt"), "--mode", "simulation", "--cap", "4"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("algebraic"), "{}", stderr(&o));
    let o = polydyn(&["phase", &path("appendix.txt"), "--cap", "4"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn trajectory_line_and_graph() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("t.dot");
    let o = polydyn(&[
        "trajectory",
        &path("appendix.txt"),
        "--init",
        "100",
        "--out",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "100 -> 011 -> 010 -> 111 -> [cycle]\n");
    let graph = fs::read_to_string(&dot).unwrap();
    assert!(graph.starts_with("digraph trajectory {"));
    assert!(graph.contains("\"111\" -> \"011\";"));
    let o = polydyn(&["trajectory", &path("appendix.txt"), "--init", "000"]);
    assert_eq!(stdout(&o), "000 -> [steady state]\n");
    let o = polydyn(&["trajectory", &path("appendix.txt"), "--init", "12"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn wiring_graph() {
    let o = polydyn(&["wiring", &path("appendix.txt")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph wiring {"));
    assert_eq!(dot.matches(" -> ").count(), 9);
    assert!(dot.contains("x2 -> x1 [color=darkgreen"));
    assert!(dot.contains("x1 -> x1 [color=red"));
    assert!(dot.contains("// circuit (x1, x2) positive"));
    let o = polydyn(&["wiring", &path("probabilistic.txt")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn phase_graphs() {
    let o = polydyn(&["phase", &path("appendix.txt")]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert_eq!(dot.matches(" -> ").count(), 8);
    assert!(dot.contains("\"010\" -> \"111\";"));
    let o = polydyn(&["phase", &path("probabilistic.txt")]);
    assert!(stdout(&o).contains("\"01\" -> \"11\" [label=\"1/2\"];"));

    let dir = tempfile::tempdir().unwrap();
    let big = dir.path().join("big.txt");
    let rules: String = (1..=12).map(|i| format!("f{i} = x{i}\n")).collect();
    fs::write(&big, format!("KIND boolean\nSTATES 2\n{rules}")).unwrap();
    let o = polydyn(&[
        "phase",
        big.to_str().unwrap(),
        "--out",
        dir.path().join("big.dot").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("4096 states"), "{}", stderr(&o));
}

fn random_files(dir: &Path, seed: &str) -> Vec<(String, Vec<u8>)> {
    let o = polydyn(&[
        "random",
        "--n",
        "50",
        "--count",
        "50",
        "--seed",
        seed,
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                fs::read(&p).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

#[test]
fn random_networks_are_reproducible() {
    let (a, b, c) = (
        tempfile::tempdir().unwrap(),
        tempfile::tempdir().unwrap(),
        tempfile::tempdir().unwrap(),
    );
    let first = random_files(a.path(), "1");
    assert_eq!(first.len(), 50);
    assert_eq!(first, random_files(b.path(), "1"));
    assert_ne!(first, random_files(c.path(), "2"));
    let mean: f64 = first
        .iter()
        .map(|(_, bytes)| mean_indegree(&ModelDocument::from_bytes(bytes).unwrap()).unwrap())
        .sum::<f64>()
        / 50.0;
    assert!((mean - 1.68).abs() <= 0.2, "mean in-degree {mean}");
}

#[test]
fn bench_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let o = polydyn(&["bench", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "model,n,seconds,steady_states\n");

    let o = polydyn(&[
        "random",
        "--n",
        "20",
        "--n-max",
        "30",
        "--count",
        "4",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    fs::write(dir.path().join("zz_broken.txt"), "KIND nonsense\n").unwrap();
    let csv = dir.path().join("out.csv");
    let o = polydyn(&[
        "bench",
        dir.path().to_str().unwrap(),
        "--jobs",
        "2",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6, "{text}");
    for row in &lines[1..5] {
        let fields: Vec<&str> = row.split(',').collect();
        let n: usize = fields[1].parse().unwrap();
        assert!((20..=30).contains(&n));
        assert!(fields[2].parse::<f64>().unwrap() >= 0.0);
        fields[3].parse::<usize>().unwrap();
    }
    assert_eq!(lines[5], "zz_broken.txt,,,error");
    assert!(stderr(&o).contains("1 failed"));
    assert!(stderr(&o).contains("2 worker(s)"));
}
