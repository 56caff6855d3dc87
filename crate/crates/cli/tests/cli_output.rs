//! Golden output and exit code checks for every subcommand.

use std::process::{Command, Output};

fn cicy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cicy"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

#[test]
fn classify_x8_table_ends_with_c1_4_44() {
    let out = cicy(&["classify", "--type", "2,4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("classification for X8 = (2,4) in P^5 (r = 8, k = 2)"));
    assert!(text.contains("c1 = 0: c2 in {3, 4, 5, 6}"));
    assert!(text.contains("c1 = 1: c2 in {4, 6, 8, 10}"));
    assert!(text.contains("c2 <= 19 (lower bound unknown)"));
    assert!(text.contains("c1 = 3: c2 in {28}"));
    let c1_4 = text.find("c1 = 4: c2 in {44}").expect("c1 = 4 row present");
    assert!(text[..c1_4].contains("c1 = 3"), "rows are ordered by c1");
    assert!(text.trim_end().ends_with("reference table cross-check: all rows agree"));
}

#[test]
fn classify_json_is_machine_readable() {
    let out = cicy(&["classify", "--type", "5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["cicy"]["r"], 5);
    assert_eq!(doc["reference_agrees"], true);
    let entries = doc["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 7);
    assert_eq!(entries[6]["c1"], 4);
    assert_eq!(entries[6]["c2"]["values"][0], 30);
    // quintic c1 = 2 interval carries both bounds
    assert_eq!(entries[4]["c2"]["known_min"], 11);
    assert_eq!(entries[4]["c2"]["max"], 14);
}

#[test]
fn classify_rejects_non_calabi_yau_types() {
    let out = cicy(&["classify", "--type", "3,4"]);
    assert_eq!(out.status.code(), Some(1));
    let out = cicy(&["classify", "--type", "1,5"]);
    assert_eq!(out.status.code(), Some(1));
    let out = cicy(&["classify", "--type", "2,x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn chi_quintic_h0_profile() {
    let out = cicy(&["chi", "--type", "5", "--c1", "2", "--c2", "11", "--twists", "0..2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let values: Vec<&str> = text.lines().skip(2).map(str::trim).collect();
    assert!(values[0].ends_with("4"));
    assert!(values[1].contains("18") && values[1].ends_with("18"));
    assert!(values[2].contains("52") && values[2].ends_with("52"));
}

#[test]
fn chi_x8_negative_c1() {
    let out = cicy(&["chi", "--type", "2,4", "--c1", "-2", "--c2", "1", "--twists", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("-19"), "{text}");

    // undetermined section count at the self-coupled twist
    let out = cicy(&["chi", "--type", "2,4", "--c1", "-2", "--c2", "1", "--twists", "1"]);
    assert!(stdout(&out).contains("undetermined"));

    // trivially zero chi for c1 = 0
    let out = cicy(&["chi", "--type", "5", "--c1", "0", "--c2", "4", "--twists", "0"]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0));
    assert!(text.lines().nth(2).unwrap().split_whitespace().nth(3) == Some("0"));
}

#[test]
fn chi_non_integral_is_a_domain_error() {
    let out = cicy(&["chi", "--type", "5", "--c1", "1", "--c2", "1", "--twists", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn chi_json_uses_null_for_undetermined() {
    let out = cicy(&[
        "chi", "--type", "2,4", "--c1", "-2", "--c2", "1", "--twists", "0..1", "--format", "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["rows"][0]["h0"], 1);
    assert!(doc["rows"][1]["h0"].is_null());
}

#[test]
fn resolve_bundle_line_case() {
    let out = cicy(&["resolve", "bundle", "--gens", "1,1,1", "--hypersurface", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("0 -> O(-4)^3 + O(-7) -> O + O(-3)^3 -> E -> 0"));
    assert!(text.contains("c1 = c - d = -2"));
}

#[test]
fn resolve_curve_prints_degree_matrix() {
    let out = cicy(&["resolve", "curve", "--gens", "2,2,2,4,4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("0 -> O(-7) -> O(-3)^2 + O(-5)^3 -> O(-2)^3 + O(-4)^2 -> I_C -> 0"));
    assert!(text.contains("0 0 1 1 1"));
    assert!(text.contains("1 1 3 3 3"));

    let raw = cicy(&["resolve", "curve", "--gens", "2,2,2,4,4", "--raw"]);
    assert!(stdout(&raw).contains("-1 -1 1 1 1"));
}

#[test]
fn resolve_bundle_even_generator_count_fails() {
    let out = cicy(&["resolve", "bundle", "--gens", "2,2", "--hypersurface", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("odd number of generators"), "{err}");
}

#[test]
fn resolve_from_bundle_both_input_forms() {
    let odd = cicy(&["resolve", "from-bundle", "--c1", "-1", "--gens", "2,2,3"]);
    assert_eq!(odd.status.code(), Some(0));
    assert!(stdout(&odd).contains("0 -> O(-4) -> O(-2) + O(-3)^2 -> O(-1)^2 + O(-2) -> I_C -> 0"));

    let even = cicy(&["resolve", "from-bundle", "--c1", "2", "--gens", "1,1,3,3,3,3"]);
    assert_eq!(even.status.code(), Some(0));
    assert!(stdout(&even).contains("O(-2)^3 + O(-4)^2"));

    let bad = cicy(&["resolve", "from-bundle", "--c1", "2", "--gens", "2,2,3,3,3,3"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn restrict_round_trip_through_emitted_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x9.json");
    let emit = cicy(&[
        "resolve", "bundle", "--gens", "1,1,1", "--hypersurface", "3", "--type", "3,3",
        "--emit", path.to_str().unwrap(),
    ]);
    assert_eq!(emit.status.code(), Some(0));

    let out = cicy(&["restrict", "--file", path.to_str().unwrap(), "--type", "3,3",
                     "--hypersurface", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("new rank: 2"));
    assert!(text.contains("inferred chern of F: (c1, c2) = (1, 6)"));
    assert!(text.contains("F(-2)"));
}

#[test]
fn restrict_rank4_reports_both_possibilities() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("canonical.json");
    cicy(&[
        "resolve", "bundle", "--gens", "2,2,2,2,2", "--hypersurface", "4", "--type", "2,4",
        "--emit", path.to_str().unwrap(),
    ]);
    let out = cicy(&["restrict", "--file", path.to_str().unwrap(), "--type", "2,4",
                     "--hypersurface", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("new rank: 4"));
    assert!(text.contains("either indecomposable or a direct sum"));
}

#[test]
fn restrict_malformed_file_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("junk.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = cicy(&["restrict", "--file", path.to_str().unwrap(), "--type", "2,4",
                     "--hypersurface", "4"]);
    assert_eq!(out.status.code(), Some(2));

    let missing = cicy(&["restrict", "--file", "/nonexistent/f.json", "--type", "2,4",
                         "--hypersurface", "4"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        vec!["classify", "--type", "2,2,3"],
        vec!["classify", "--type", "2,2,2,2", "--format", "json"],
        vec!["chi", "--type", "3,3", "--c1", "1", "--c2", "6", "--twists", "-2..3"],
        vec!["resolve", "curve", "--gens", "2,2,2,4,4"],
        vec!["verify"],
    ] {
        let a = cicy(&args);
        let b = cicy(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn usage_errors_exit_2() {
    let out = cicy(&["classify"]);
    assert_eq!(out.status.code(), Some(2));
    let out = cicy(&["chi", "--type", "5", "--c1", "2", "--c2", "11", "--twists", "5..1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = cicy(&["resolve", "curve", "--gens", "1,1,1", "--type", "2,4"]);
    assert_eq!(out.status.code(), Some(2), "type without hypersurface is ambiguous");
}
