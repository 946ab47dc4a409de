//! End-to-end tests of the command-line interface.

use std::fs;
use std::path::Path;
use std::process::Command;

fn maxcolor() -> Command {
    Command::new(env!("CARGO_BIN_EXE_maxcolor"))
}

fn run_in(dir: &Path, args: &[&str]) -> (i32, String, String) {
    let out = maxcolor()
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn gen_round_trips_through_parse() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = run_in(dir.path(), &["gen", "fat-cycle", "-k", "1", "-o", "g.txt"]);
    assert_eq!(code, 0);
    let text = fs::read_to_string(dir.path().join("g.txt")).unwrap();
    let g = maxcolor::Multigraph::parse(&text).unwrap();
    assert_eq!(g.vertex_count(), 3);
    assert_eq!(g.edge_count(), 6);
    // Identity on ids: serialize again and compare edge lines.
    let reserialized = g.to_text();
    let body: String = text.lines().skip(1).map(|l| format!("{l}\n")).collect();
    assert_eq!(reserialized, body);
}

#[test]
fn max_subgraph_report_fields() {
    let dir = tempfile::tempdir().unwrap();
    run_in(dir.path(), &["gen", "fat-cycle", "-k", "1", "-o", "g.txt"]);
    let (code, _, _) = run_in(dir.path(), &["max-subgraph", "g.txt", "--report", "r.json"]);
    assert_eq!(code, 0);
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(report["max_subgraph_size"], 4);
    assert_eq!(report["r_e"], 2);
    assert_eq!(report["chi"], 6);
    assert_eq!(report["delta"], 4);
    assert_eq!(report["class"], 2);
    assert_eq!(report["r_prime"], 2);
    assert_eq!(report["optimal"], true);
}

#[test]
fn color_reports_decision() {
    let dir = tempfile::tempdir().unwrap();
    run_in(dir.path(), &["gen", "petersen", "-o", "g.txt"]);
    let (code, stdout, _) = run_in(dir.path(), &["color", "g.txt", "-t", "3"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"colorable\":false"));
    let (code, stdout, _) = run_in(
        dir.path(),
        &["color", "g.txt", "-t", "4", "-o", "witness.txt"],
    );
    assert_eq!(code, 0);
    assert!(stdout.contains("\"colorable\":true"));
    let g = maxcolor::Multigraph::parse(&fs::read_to_string(dir.path().join("g.txt")).unwrap())
        .unwrap();
    let witness = maxcolor::PartialColoring::parse(
        &fs::read_to_string(dir.path().join("witness.txt")).unwrap(),
        g.edge_count(),
    )
    .unwrap();
    assert!(witness.is_proper(&g));
    assert_eq!(witness.colored_count(), g.edge_count());
}

#[test]
fn verify_corpus_passes_and_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    run_in(dir.path(), &["gen", "fat-cycle", "-k", "1", "-o", "a_fat.txt"]);
    run_in(dir.path(), &["gen", "petersen", "-o", "b_pet.txt"]);
    let args = [
        "verify",
        "--corpus",
        ".",
        "--theorems",
        "cut,ratio,class1,matching,assignment",
        "--out",
        "report.jsonl",
    ];
    let (code, _, _) = run_in(dir.path(), &args);
    assert_eq!(code, 0);
    let report = fs::read_to_string(dir.path().join("report.jsonl")).unwrap();
    let lines: Vec<&str> = report.lines().collect();
    assert_eq!(lines.len(), 10, "one record per (instance, theorem)");
    for line in &lines {
        let record: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_ne!(record["outcome"], "fail");
    }
    // Instance order is stable by name.
    let instances: Vec<String> = lines
        .iter()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["instance"]
            .as_str()
            .unwrap()
            .to_string())
        .collect();
    assert!(instances.windows(2).all(|w| w[0] <= w[1]));
    // Identical invocation, byte-identical report.
    let (code, _, _) = run_in(dir.path(), &args);
    assert_eq!(code, 0);
    assert_eq!(
        fs::read_to_string(dir.path().join("report.jsonl")).unwrap(),
        report
    );
}

#[test]
fn verify_budget_exhaustion_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    run_in(dir.path(), &["gen", "petersen", "-o", "g.txt"]);
    let (code, _, stderr) = run_in(
        dir.path(),
        &["verify", "--corpus", ".", "--theorems", "cut", "--node-budget", "3"],
    );
    assert_eq!(code, 2, "budget exhaustion is exit 2: {stderr}");
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = run_in(dir.path(), &["max-subgraph", "missing.txt"]);
    assert_eq!(code, 2);
    run_in(dir.path(), &["gen", "petersen", "-o", "g.txt"]);
    let (code, _, _) = run_in(
        dir.path(),
        &["verify", "--corpus", ".", "--theorems", "nonsense"],
    );
    assert_eq!(code, 2);
}

#[test]
fn assign_extend_normalize_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    run_in(dir.path(), &["gen", "petersen", "-o", "g.txt"]);
    let (code, stdout, _) = run_in(dir.path(), &["assign-cycles", "g.txt"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(doc["entries"].as_array().unwrap().len(), 2);

    // The outer and inner five-cycles form a 2-factor.
    fs::write(dir.path().join("factor.txt"), "0 1 2 3 4\n10 11 12 13 14\n").unwrap();
    let (code, stdout, _) = run_in(
        dir.path(),
        &[
            "extend",
            "g.txt",
            "--cycles",
            "factor.txt",
            "--two-factor",
            "--coloring-out",
            "ext.txt",
        ],
    );
    assert_eq!(code, 0, "{stdout}");
    let g = maxcolor::Multigraph::parse(&fs::read_to_string(dir.path().join("g.txt")).unwrap())
        .unwrap();
    let ext = maxcolor::PartialColoring::parse(
        &fs::read_to_string(dir.path().join("ext.txt")).unwrap(),
        g.edge_count(),
    )
    .unwrap();
    assert_eq!(ext.colored_count(), 13);
    for idx in [0usize, 1, 2, 3, 4, 10, 11, 12, 13, 14] {
        assert!(ext.color_of(maxcolor::EdgeId(idx)).is_some());
    }

    let (code, stdout, _) = run_in(dir.path(), &["normalize", "g.txt"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"uncolored\":2"));
}

#[test]
fn explore_reports_matches() {
    let dir = tempfile::tempdir().unwrap();
    run_in(dir.path(), &["gen", "fat-cycle", "-k", "1", "-o", "g.txt"]);
    let (code, stdout, _) = run_in(dir.path(), &["explore", "g.txt"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(doc["gap"], 2);
    assert_eq!(doc["achieved"], 2);
    assert_eq!(doc["matches"], true);
    assert!(!dir.path().join("g.counterexample.json").exists());
}

#[test]
fn figure1_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = run_in(
        dir.path(),
        &[
            "gen",
            "figure1",
            "-o",
            "g.txt",
            "--coloring-out",
            "c.txt",
            "--dot-out",
            "g.dot",
        ],
    );
    assert_eq!(code, 0);
    let dot = fs::read_to_string(dir.path().join("g.dot")).unwrap();
    assert_eq!(dot.matches("label=").count(), 4);
    assert_eq!(dot.matches("dashed").count(), 2);
    let g = maxcolor::Multigraph::parse(&fs::read_to_string(dir.path().join("g.txt")).unwrap())
        .unwrap();
    let c = maxcolor::PartialColoring::parse(
        &fs::read_to_string(dir.path().join("c.txt")).unwrap(),
        g.edge_count(),
    )
    .unwrap();
    assert!(c.is_proper(&g));
    assert_eq!(c.colored_count(), 4);
}

#[test]
fn random_class2_is_seed_stable() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "gen",
        "random-class2",
        "--seed",
        "1",
        "-n",
        "5",
        "--mu-max",
        "1",
        "-o",
        "g.txt",
    ];
    run_in(dir.path(), &args);
    let first = fs::read_to_string(dir.path().join("g.txt")).unwrap();
    run_in(dir.path(), &args);
    assert_eq!(fs::read_to_string(dir.path().join("g.txt")).unwrap(), first);
}
