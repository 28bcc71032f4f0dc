//! End-to-end tests of the `wlc` binary: command output, JSON schema
//! stability, exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn wlc() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wlc"))
}

fn run(args: &[&str]) -> Output {
    wlc().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn temp_file(name: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("wlc-cli-test-{}-{name}", std::process::id()));
    path
}

#[test]
fn gen_then_analyze_round_trips() {
    let path = temp_file("z2.json");
    let gen = run(&["gen", "Z2 + bar(1x1)", "-o", path.to_str().unwrap()]);
    assert!(gen.status.success());
    let analyze = run(&["analyze", path.to_str().unwrap()]);
    assert!(analyze.status.success());
    let text = stdout(&analyze);
    assert!(text.contains("p1_c2: surely losing"));
    assert!(text.contains("structural classes"));
    std::fs::remove_file(path).ok();
}

#[test]
fn gen_output_is_byte_stable() {
    let a = run(&["gen", "O3"]);
    let b = run(&["gen", "O3"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));

    // load-then-save canonicalises the win order
    let path = temp_file("o3.json");
    std::fs::write(&path, stdout(&a)).unwrap();
    let dot1 = run(&["export-dot", path.to_str().unwrap()]);
    assert!(dot1.status.success());
    std::fs::remove_file(path).ok();
}

#[test]
fn solve_crc_with_trace_reports_iterations() {
    // the 2-player 3x3 path with explicit names
    let doc = r#"{
        "players": 2,
        "choices": [["a1", "b1", "c1"], ["a2", "b2", "c2"]],
        "win": [["a1","a2"], ["b1","a2"], ["b1","b2"], ["c1","b2"], ["c1","c2"]]
    }"#;
    let path = temp_file("path3.json");
    std::fs::write(&path, doc).unwrap();
    let solve = run(&["solve", path.to_str().unwrap(), "-p", "CRC", "--trace"]);
    assert!(solve.status.success());
    let text = stdout(&solve);
    assert!(
        text.contains("fixed point after 2 shrinking iterations"),
        "{text}"
    );
    assert!(text.contains("player 1: {b1}"), "{text}");
    assert!(text.contains("player 2: {b2}"), "{text}");
    assert!(text.contains("solved: true"), "{text}");
    std::fs::remove_file(path).ok();
}

#[test]
fn classify_flags_indeterminate_games() {
    let path = temp_file("indet.json");
    let gen = run(&["gen", "1x2 + 2x1", "-o", path.to_str().unwrap()]);
    assert!(gen.status.success());
    let classify = run(&["classify", path.to_str().unwrap(), "--json"]);
    assert!(classify.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&classify)).unwrap();
    assert_eq!(value["structurally_indeterminate"], true);
    assert_eq!(value["unwinnable"], false);
    assert!(value["canonical_choice_sets"].is_null());
    let principles = value["principles"].as_object().unwrap();
    assert_eq!(principles.len(), 14);
    for (name, verdict) in principles {
        assert_eq!(verdict["solves"], false, "{name} should not solve");
    }
    std::fs::remove_file(path).ok();
}

#[test]
fn classify_json_matches_library_verdicts() {
    let path = temp_file("z2bar.json");
    run(&["gen", "Z2 + bar(1x1)", "-o", path.to_str().unwrap()]);
    let classify = run(&["classify", path.to_str().unwrap(), "--json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&classify)).unwrap();

    let game = wlc_core::algebra::game_from_expression("Z2 + bar(1x1)").unwrap();
    let report = wlc_core::classify::classify(&game).unwrap();
    for v in &report.verdicts {
        assert_eq!(
            value["principles"][v.principle.label()]["solves"],
            v.solves,
            "{}",
            v.principle.label()
        );
    }
    // one round drops the losing choices, the next keeps only the now
    // surely winning ones
    assert_eq!(
        value["principles"]["BCR"]["iterations"],
        serde_json::json!(2)
    );
    std::fs::remove_file(path).ok();
}

#[test]
fn export_dot_node_and_edge_counts() {
    let path = temp_file("dot2x3.json");
    run(&["gen", "2x3", "-o", path.to_str().unwrap()]);
    let dot = run(&["export-dot", path.to_str().unwrap()]);
    assert!(dot.status.success());
    let text = stdout(&dot);
    assert_eq!(text.matches(" -- ").count(), 6);
    assert_eq!(text.lines().filter(|l| l.starts_with("    \"")).count(), 5);

    // 3-player games get one point node per winning profile
    let path3 = temp_file("dot3.json");
    let doc = r#"{
        "players": 3,
        "choices": [["a1","b1"],["a2","b2"],["a3","b3"]],
        "win": [["a1","a2","a3"],["a1","a2","b3"],["a1","b2","b3"],["b1","b2","b3"]]
    }"#;
    std::fs::write(&path3, doc).unwrap();
    let dot = run(&["export-dot", path3.to_str().unwrap()]);
    let text = stdout(&dot);
    assert_eq!(text.matches("shape=point").count(), 4);
    assert_eq!(text.matches(" -- ").count(), 12);
    assert_eq!(text.lines().filter(|l| l.starts_with("    \"")).count(), 6);
    std::fs::remove_file(path).ok();
    std::fs::remove_file(path3).ok();
}

#[test]
fn invalid_expression_exits_one_with_machine_readable_error() {
    let out = run(&["gen", "bogus"]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(err["error"], "parse");
    assert!(err["message"].as_str().unwrap().contains("byte 0"));

    let out = run(&["gen", "Z0"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["solve", "/nonexistent.json", "-p", "NL"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn schema_errors_carry_pointers() {
    let path = temp_file("badarity.json");
    std::fs::write(
        &path,
        r#"{"players": 2, "choices": [["a"],["b"]], "win": [["a"]]}"#,
    )
    .unwrap();
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(err["error"], "schema");
    assert!(err["message"].as_str().unwrap().contains("/win/0"));
    std::fs::remove_file(path).ok();
}

#[test]
fn size_limit_exits_two() {
    let path = temp_file("big.json");
    run(&["gen", "5x5", "-o", path.to_str().unwrap()]);
    let out = wlc()
        .args(["analyze", path.to_str().unwrap()])
        .env("WLC_SIZE_LIMIT", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(err["error"], "size-limit");
    std::fs::remove_file(path).ok();
}

#[test]
fn verify_hierarchy_passes_on_small_corpus() {
    let out = run(&["verify-hierarchy", "--players", "2", "--max-choices", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("all "));
    assert!(!text.contains("FAIL"));
}

#[test]
fn gen_analyze_never_fails_on_valid_expressions() {
    for expr in [
        "1x1",
        "2",
        "bar(2x2)",
        "Z4",
        "O2",
        "3(1^3)",
        "1x2 + 1x0",
        "2(1x2) + 1x1",
        "2Z2",
    ] {
        let path = temp_file(&format!("expr-{}.json", expr.len()));
        let gen = run(&["gen", expr, "-o", path.to_str().unwrap()]);
        assert!(gen.status.success(), "gen {expr}");
        let analyze = run(&["analyze", path.to_str().unwrap()]);
        assert!(analyze.status.success(), "analyze {expr}");
        std::fs::remove_file(path).ok();
    }
}
