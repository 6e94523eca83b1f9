use std::path::PathBuf;
use std::process::Command;

use cphg_cli::{run, Outcome, EXIT_DECIDED, EXIT_UNDECIDED, EXIT_USAGE};
use serde_json::Value as Json;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn cphg(args: &[&str]) -> Outcome {
    run(std::iter::once("cphg").chain(args.iter().copied()))
}

fn structured(args: &[&str]) -> (i32, Json) {
    let mut full = vec!["--format", "structured"];
    full.extend_from_slice(args);
    let out = cphg(&full);
    let json = serde_json::from_str(&out.stdout)
        .unwrap_or_else(|e| panic!("bad json ({e}): {}\n{}", out.stdout, out.stderr));
    (out.code, json)
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn is_cp_on_path_matrix_is_a_decided_not_cp() {
    let out = cphg(&["--format", "structured", "is-cp", &data("path.t")]);
    assert_eq!(out.code, EXIT_DECIDED);
    let golden = r#"{
  "command": "is-cp",
  "input": "tensor",
  "verdict": "not-cp",
  "branch": [
    1,
    2,
    3
  ],
  "missing": [
    1,
    3
  ],
  "warnings": []
}
"#;
    assert_eq!(out.stdout, golden);

    let pretty = cphg(&["is-cp", &data("path.t")]);
    assert_eq!(pretty.code, EXIT_DECIDED);
    assert!(pretty.stdout.contains("not-cp"));
    assert!(pretty.stdout.contains("{1,2,3}") && pretty.stdout.contains("(1,3)"));
}

#[test]
fn construct_cp_writes_the_three_pair_tensor() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("built.t");
    let out = cphg(&[
        "construct-cp",
        &data("three_pairs.hg"),
        "-o",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.code, EXIT_DECIDED, "{}", out.stderr);
    let written = std::fs::read_to_string(&target).unwrap();
    assert_eq!(
        written,
        std::fs::read_to_string(data("three_pairs.t")).unwrap()
    );
    let expected_slices = "\
A(:,:,1) =
  2 1 1
  1 1 0
  1 0 1
A(:,:,2) =
  1 1 0
  1 2 1
  0 1 1
A(:,:,3) =
  1 0 1
  0 1 1
  1 1 2
";
    assert!(out.stdout.contains(expected_slices), "{}", out.stdout);

    let (code, json) = structured(&["construct-cp", &data("three_pairs.hg")]);
    assert_eq!(code, EXIT_DECIDED);
    assert_eq!(json["verified"], true);
    assert_eq!(json["associated"], true);
    let supports: Vec<Json> = json["certificate"]["vectors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v["support"].clone())
        .collect();
    assert_eq!(
        supports,
        vec![
            serde_json::json!([1, 2]),
            serde_json::json!([1, 3]),
            serde_json::json!([2, 3])
        ]
    );
}

#[test]
fn construct_cp_refuses_without_property_r() {
    let out = cphg(&["construct-cp", &data("listed_eight.hg")]);
    assert_eq!(out.code, EXIT_UNDECIDED);
    assert!(
        out.stderr.contains("(2,2,3)") && out.stderr.contains("(2,3,3)"),
        "{}",
        out.stderr
    );
}

#[test]
fn analyze_listed_edges() {
    let (code, json) = structured(&["analyze", &data("listed_eight.hg")]);
    assert_eq!(code, EXIT_DECIDED);
    assert_eq!(json["rank"], 2);
    assert_eq!(json["corank"], 1);
    assert_eq!(
        json["maximal_bases"],
        serde_json::json!([[1, 2], [1, 3], [2, 3]])
    );
    assert_eq!(json["minimal_bases"], serde_json::json!([[1], [2], [3]]));
    assert_eq!(json["property_r"]["holds"], false);
    assert_eq!(json["edges"]["distinct"], 8);

    let pretty = cphg(&["analyze", &data("listed_eight.hg")]);
    assert!(pretty.stdout.contains("rank 2, co-rank 1"));
}

#[test]
fn decompose_reports_both_views_of_the_single_edge() {
    let (code, json) = structured(&["decompose", &data("single_edge.t")]);
    assert_eq!(code, EXIT_DECIDED);
    assert_eq!(json["reducibility_witness"]["status"], "found");
    assert_eq!(
        json["reducibility_witness"]["set"],
        serde_json::json!([1, 2])
    );
    assert_eq!(json["blocks"].as_array().unwrap().len(), 1);
    assert_eq!(json["blocks"][0]["dimension"], 3);

    let (_, skipped) = structured(&[
        "decompose",
        "--exhaustive-limit",
        "2",
        &data("single_edge.t"),
    ]);
    assert_eq!(skipped["reducibility_witness"]["status"], "skipped");
    assert_eq!(
        skipped["zero_structures"]["maximal_zero_blocks"],
        Json::Null
    );
}

#[test]
fn oracle_reports_rank_and_budget() {
    let (code, json) = structured(&["oracle", &data("three_pairs.t")]);
    assert_eq!(code, EXIT_DECIDED);
    assert_eq!(json["verdict"]["verdict"], "cp");
    assert_eq!(json["rank"]["rank"], 3);

    let (code, json) = structured(&["oracle", &data("path.t")]);
    assert_eq!(code, EXIT_DECIDED);
    assert_eq!(json["verdict"]["verdict"], "not-cp");

    let out = cphg(&[
        "--format",
        "structured",
        "oracle",
        "--node-limit",
        "2",
        &data("three_pairs.t"),
    ]);
    assert_eq!(out.code, EXIT_UNDECIDED);
    let json: Json = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(json["verdict"]["verdict"], "budget-exceeded");

    let out = cphg(&["oracle", "--max-dimension", "2", &data("three_pairs.t")]);
    assert_eq!(out.code, EXIT_UNDECIDED);
    assert!(out.stderr.contains("oracle dimension"), "{}", out.stderr);
}

#[test]
fn is_cp_rejects_non_binary_tensors() {
    let out = cphg(&["is-cp", &data("three_pairs.t")]);
    assert_eq!(out.code, EXIT_UNDECIDED);
    assert!(out.stderr.contains("(1,1,1) is 2"), "{}", out.stderr);
}

#[test]
fn pattern_converts_both_ways() {
    let dir = tempfile::tempdir().unwrap();
    let hg = dir.path().join("p.hg");
    let out = cphg(&[
        "pattern",
        &data("three_pairs.t"),
        "-o",
        hg.to_str().unwrap(),
    ]);
    assert_eq!(out.code, EXIT_DECIDED);
    let back = cphg(&["pattern", hg.to_str().unwrap()]);
    assert_eq!(back.code, EXIT_DECIDED);
    assert!(back
        .stdout
        .starts_with("tensor v1\norder 3\ndimension 3\nvalues integer\n"));
    assert_eq!(back.stdout.lines().count(), 4 + 9);
    assert!(back.stdout.contains("1 1 1 1\n"));
}

#[test]
fn duplicate_edges_warn_and_malformed_lines_fail() {
    let dir = tempfile::tempdir().unwrap();
    let dup = write_temp(
        &dir,
        "dup.hg",
        "hypergraph v1\nvertices 2\nuniformity 3\n1 1 2\n2 1 1\n",
    );
    let out = cphg(&["analyze", &dup]);
    assert_eq!(out.code, EXIT_DECIDED);
    assert!(out.stderr.contains("warning: line 5"), "{}", out.stderr);
    let (_, json) = structured(&["analyze", &dup]);
    assert_eq!(json["edges"]["distinct"], 1);
    assert_eq!(json["warnings"][0]["line"], 5);

    let bad = write_temp(
        &dir,
        "bad.hg",
        "hypergraph v1\nvertices 3\nuniformity 3\n1 x 2\n",
    );
    let out = cphg(&["analyze", &bad]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("line 4, column 3"), "{}", out.stderr);
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors() {
    assert_eq!(cphg(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(cphg(&["is-cp"]).code, EXIT_USAGE);
    assert_eq!(
        cphg(&["--format", "xml", "is-cp", &data("path.t")]).code,
        EXIT_USAGE
    );
    let missing = cphg(&["is-cp", "/nonexistent/file.t"]);
    assert_eq!(missing.code, EXIT_USAGE);
    assert!(missing.stderr.contains("cannot read"));
    let help = cphg(&["--help"]);
    assert_eq!(help.code, EXIT_DECIDED);
    assert!(help.stdout.contains("construct-cp"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_cphg");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let out = status(&["is-cp", &data("path.t")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("not-cp"));
    assert_eq!(
        status(&["is-cp", &data("three_pairs.t")]).status.code(),
        Some(2)
    );
    assert_eq!(status(&["bogus"]).status.code(), Some(1));
}
