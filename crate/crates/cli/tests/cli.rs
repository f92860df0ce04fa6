//! End-to-end checks of the binary: output schemas, exit codes, and
//! byte-level determinism.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_poset-rainbow"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON: {e}\n{}", String::from_utf8_lossy(&out.stdout))
    })
}

#[test]
fn poset_hasse_of_crown() {
    let out = run(&["poset", "--catalog", "crown:3", "--show", "hasse"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["arc_count"], 6);
}

#[test]
fn ar_diamond_value_and_determinism() {
    let a = run(&["ar", "--n", "3", "--poset", "diamond", "--mode", "weak"]);
    let b = run(&["ar", "--n", "3", "--poset", "diamond", "--mode", "weak"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "identical inputs must give byte-identical output");
    let v = stdout_json(&a);
    assert_eq!(v["value"], 5);
    assert_eq!(v["exact"], true);
}

#[test]
fn la_with_witness_file() {
    let dir = std::env::temp_dir().join("poset-rainbow-test-la");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("witness.txt");
    let out = run(&[
        "la",
        "--n",
        "4",
        "--posets",
        "fork:2,broom:2",
        "--mode",
        "weak",
        "--emit-witness",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["value"], 6);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("n=4\n"));
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn certify_exit_codes() {
    // The butterfly coloring certifies clean against the butterfly.
    let out = run(&[
        "certify",
        "--coloring",
        "butterfly:4",
        "--poset",
        "crown:2",
        "--mode",
        "strong",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["colors"], 11);
    assert!(v["rainbow"].is_null());

    // The single-chain broom coloring does not: exit code 1 plus witness.
    let out = run(&[
        "certify",
        "--coloring",
        "broomchain:5:2",
        "--poset",
        "broom:2",
        "--mode",
        "strong",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["colors"], 6);
    assert!(v["rainbow"].is_object());
}

#[test]
fn find_copy_prints_witness() {
    let out = run(&["find-copy", "--poset", "chain:2", "--family", "middle:3:2", "--mode", "weak"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["found"], true);
    assert!(v["witness"].is_object());
}

#[test]
fn sandwich_diamond_holds() {
    let out = run(&["sandwich", "--n", "3", "--poset", "diamond", "--mode", "weak"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["ar"], 5);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn lemma10_exit_reflects_margins() {
    let out = run(&["lemma10", "--n", "1000000", "--k", "3", "--j", "1000"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["all_positive"], false);

    let out = run(&["lemma10", "--n", "1000000000000000000", "--k", "3", "--j", "1000"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["all_positive"], true);
}

#[test]
fn partition_of_two_middle_layers() {
    let out = run(&["partition", "--family", "middle:6:2", "--epsilon", "0.5", "--k", "3"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    // Upper layer qualifies at depth 1, lower layer has empty shadows.
    assert_eq!(v["f1"]["masks"].as_array().unwrap().len(), 15);
    assert_eq!(v["f3"]["masks"].as_array().unwrap().len(), 20);
}

#[test]
fn embed_crown_pipeline_small() {
    let out = run(&["embed-crown", "--k", "3", "--family", "middle:12:2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["verified"], true);
    assert_eq!(v["embedding"].as_object().unwrap().len(), 6);
}

#[test]
fn embed_crown_pipeline_k4() {
    let out = run(&["embed-crown", "--k", "4", "--family", "middle:12:2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["verified"], true);
    assert_eq!(v["embedding"].as_object().unwrap().len(), 8);
}

#[test]
fn thread_count_does_not_change_results() {
    // Value and witness are independent of the worker count; the explored
    // node count legitimately differs (each prefix subtree keeps its own
    // bound). Identical inputs are byte-identical even in parallel.
    let one = run(&["--threads", "1", "la", "--n", "4", "--posets", "fork:2,broom:2"]);
    let four = run(&["--threads", "4", "la", "--n", "4", "--posets", "fork:2,broom:2"]);
    let four_again = run(&["--threads", "4", "la", "--n", "4", "--posets", "fork:2,broom:2"]);
    assert!(one.status.success());
    assert_eq!(four.stdout, four_again.stdout);
    let a = stdout_json(&one);
    let b = stdout_json(&four);
    assert_eq!(a["value"], b["value"]);
    assert_eq!(a["witness"], b["witness"]);
}

#[test]
fn thread_env_var_is_honored() {
    let out = bin()
        .env("POSET_RAINBOW_THREADS", "2")
        .args(["ar", "--n", "3", "--poset", "diamond"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["value"], 5);
}

#[test]
fn poset_accepts_json_literal() {
    let out = run(&[
        "poset",
        "--catalog",
        r#"{"n": 3, "covers": [[0, 1], [1, 2]]}"#,
        "--show",
        "height",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["height"], 3);
}

#[test]
fn union_extract_on_a_layer() {
    let out = run(&["union-extract", "--family", "layer:6:2", "--s", "2", "--k", "1"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["found"], true);
    assert_eq!(v["bounded_union"]["masks"].as_array().unwrap().len(), 3);
}

#[test]
fn repro_single_criterion() {
    let out = run(&["repro", "AC1"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("AC1"));
    assert!(text.contains("pass"));
}

#[test]
fn repro_unknown_id_is_usage_error() {
    let out = run(&["repro", "AC99"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn construct_writes_coloring_file() {
    let dir = std::env::temp_dir().join("poset-rainbow-test-construct");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("butterfly5.txt");
    let out = run(&[
        "construct",
        "--kind",
        "butterfly",
        "--n",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("n=5\n"));
    assert_eq!(text.lines().count(), 33);
    // Round-trip through certify using the file path.
    let out = run(&[
        "certify",
        "--coloring",
        path.to_str().unwrap(),
        "--poset",
        "butterfly",
        "--mode",
        "strong",
    ]);
    assert!(out.status.success());
}

#[test]
fn csv_format_is_flat() {
    let out = run(&["--format", "csv", "ar", "--n", "3", "--poset", "diamond"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().any(|l| l == "value,5"), "{text}");
}

#[test]
fn embed_spider_fraction_discipline() {
    let out = run(&[
        "embed-spider",
        "--family",
        "middle:12:2",
        "--j",
        "1",
        "--legs",
        "3",
        "--leglen",
        "1",
        "--discipline",
        "full",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["strong_copy_verified"], true);
    assert_eq!(v["legs"].as_array().unwrap().len(), 3);
}
