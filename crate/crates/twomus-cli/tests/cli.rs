//! End-to-end runs of the `twomus` binary against small fixture files.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Run the binary on a fixture with extra arguments; the TWOMUS_BOUND
/// variable is cleared so an outer environment cannot skew the run.
fn run(file: &str, args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_twomus"));
    cmd.env_remove("TWOMUS_BOUND");
    // subcommand first, then the file, then the flags
    cmd.arg(args[0]).arg(fixture(file)).args(&args[1..]);
    cmd.output().expect("binary runs")
}

fn stdout_of(out: &Output) -> &str {
    std::str::from_utf8(&out.stdout).expect("utf-8 stdout")
}

fn stderr_of(out: &Output) -> &str {
    std::str::from_utf8(&out.stderr).expect("utf-8 stderr")
}

#[track_caller]
fn assert_exit(out: &Output, code: i32) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "stdout:\n{}\nstderr:\n{}",
        stdout_of(out),
        stderr_of(out)
    );
}

#[test]
fn check_reports_measures_and_family() {
    let out = run("u22.cnf", &["check"]);
    assert_exit(&out, 0);
    assert_eq!(
        stdout_of(&out),
        "2cnf yes\nn 2  c 3  u 2  ell 4  delta 1\nsat no\nmu yes\nfamily Ib\n"
    );
}

#[test]
fn check_omits_family_for_satisfiable_input() {
    let out = run("sat.cnf", &["check"]);
    assert_exit(&out, 0);
    assert_eq!(
        stdout_of(&out),
        "2cnf yes\nn 2  c 2  u 0  ell 4  delta 0\nsat yes\nmu no\n"
    );
}

#[test]
fn check_classifies_a_unit_free_minimal_set() {
    let out = run("loop.cnf", &["check"]);
    assert_exit(&out, 0);
    assert!(stdout_of(&out).ends_with("mu yes\nfamily III\n"));
}

#[test]
fn check_cross_checks_against_the_oracle() {
    let out = run("union.cnf", &["check", "--oracle"]);
    assert_exit(&out, 0);
    assert!(stdout_of(&out).ends_with("oracle agree\n"));
}

#[test]
fn check_rejects_non_dimacs_input() {
    let out = run("ring.st", &["check"]);
    assert_exit(&out, 2);
    assert!(stderr_of(&out).starts_with("error:"));
}

#[test]
fn check_rejects_a_missing_file() {
    let out = run("nosuch.cnf", &["check"]);
    assert_exit(&out, 2);
}

#[test]
fn find_one_unit_prints_the_subset_in_host_order() {
    let out = run("union.cnf", &["find", "--unit", "1"]);
    assert_exit(&out, 0);
    assert_eq!(
        stdout_of(&out),
        "c family=IIa witness=1,2,-1\np cnf 2 3\n1 0\n-1 2 0\n-1 -2 0\n"
    );
}

#[test]
fn find_two_units_returns_the_joint_core() {
    let expect = "c family=Ib witness=1,2\np cnf 2 3\n1 0\n-1 2 0\n-2 0\n";
    let out = run("union.cnf", &["find", "--units", "1", "-2"]);
    assert_exit(&out, 0);
    assert_eq!(stdout_of(&out), expect);
    // the lone candidate is trivially the shortest one
    let short = run("union.cnf", &["find", "--units", "1", "-2", "--shortest"]);
    assert_exit(&short, 0);
    assert_eq!(stdout_of(&short), expect);
}

#[test]
fn find_exactly_one_excludes_two_unit_subsets() {
    let out = run("union.cnf", &["find", "--exactly-one"]);
    assert_exit(&out, 0);
    assert!(stdout_of(&out).starts_with("c family=IIa witness=1,2,-1\n"));
}

#[test]
fn find_deletion_works_without_unit_clauses() {
    let out = run("union.cnf", &["find", "--deletion"]);
    assert_exit(&out, 0);
    assert_eq!(
        stdout_of(&out),
        "c family=IIb witness=-\np cnf 3 4\n1 0\n-1 2 0\n-2 3 0\n-2 -3 0\n"
    );
}

#[test]
fn find_reports_none_when_nothing_qualifies() {
    // unsatisfiable but unit-free: no unit-containing subset exists
    let out = run("loop.cnf", &["find", "--any-unit"]);
    assert_exit(&out, 1);
    assert_eq!(stdout_of(&out), "none\n");
    // satisfiable: no unsatisfiable subset at all
    let out = run("sat.cnf", &["find", "--deletion"]);
    assert_exit(&out, 1);
    assert_eq!(stdout_of(&out), "none\n");
}

#[test]
fn find_rejects_a_unit_absent_from_the_input() {
    let out = run("union.cnf", &["find", "--unit", "3"]);
    assert_exit(&out, 2);
    assert!(stderr_of(&out).contains("does not occur"));
}

#[test]
fn enum_stream_matches_the_golden_file() {
    let out = run("union.cnf", &["enum", "--unit", "1"]);
    assert_exit(&out, 0);
    assert_eq!(stdout_of(&out), golden("union_enum.txt"));
}

#[test]
fn enum_trace_matches_the_golden_file() {
    let out = run("union.cnf", &["enum", "--unit", "1", "--trace"]);
    assert_exit(&out, 0);
    assert_eq!(stdout_of(&out), golden("union_trace.txt"));
}

#[test]
fn enum_limit_cuts_the_stream_after_the_first_block() {
    let out = run("union.cnf", &["enum", "--unit", "1", "--limit", "1"]);
    assert_exit(&out, 0);
    let first_block = golden("union_enum.txt");
    let first_block = first_block.split("\n\n").next().unwrap();
    assert_eq!(stdout_of(&out), format!("{first_block}\n"));
}

#[test]
fn enum_trace_limit_stops_at_the_first_delivery() {
    let out = run("union.cnf", &["enum", "--unit", "1", "--trace", "--limit", "1"]);
    assert_exit(&out, 0);
    let full = golden("union_trace.txt");
    let rows: Vec<&str> = full.lines().collect();
    let cut = rows
        .iter()
        .position(|r| r.split('\t').nth(1) == Some("output"))
        .expect("the full trace delivers at least once");
    let expect: String = rows[..=cut].iter().map(|r| format!("{r}\n")).collect();
    assert_eq!(stdout_of(&out), expect);
}

#[test]
fn enum_json_emits_one_object_per_subset() {
    let out = run("union.cnf", &["enum", "--all-units", "--json"]);
    assert_exit(&out, 0);
    let lines: Vec<&str> = stdout_of(&out).lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(
        lines[0],
        r#"{"clauses":[[1],[-1,2],[-1,-2]],"family":"IIa","witness":[1,2,-1]}"#
    );
    let mut families = Vec::new();
    for line in &lines {
        let v: serde_json::Value = serde_json::from_str(line).expect("valid json");
        let obj = v.as_object().expect("object per line");
        let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        keys.sort();
        assert_eq!(keys, ["clauses", "family", "witness"]);
        assert!(obj["clauses"].as_array().is_some_and(|c| !c.is_empty()));
        families.push(obj["family"].as_str().expect("named family").to_owned());
    }
    assert_eq!(families, ["IIa", "Ib", "IIb"]);
}

#[test]
fn enum_respects_an_explicit_literal_order() {
    let out = run(
        "union.cnf",
        &["enum", "--unit", "1", "--order", "1 -1 -2 2 3 -3"],
    );
    assert_exit(&out, 0);
    // ranking -2 before 2 promotes the (1, -2, -1) witness to the front
    let heads: Vec<&str> = stdout_of(&out)
        .lines()
        .filter(|l| l.starts_with("c "))
        .collect();
    assert_eq!(
        heads,
        [
            "c family=IIa witness=1,-2,-1",
            "c family=Ib witness=1,2,-2",
            "c family=IIb witness=1,2,3,-2"
        ]
    );
}

#[test]
fn enum_rejects_an_order_that_skips_variables() {
    let out = run("union.cnf", &["enum", "--unit", "1", "--order", "1 -1"]);
    assert_exit(&out, 2);
    assert!(stderr_of(&out).contains("both polarities"));
}

#[test]
fn enum_oracle_confirms_the_stream() {
    let out = run("union.cnf", &["enum", "--unit", "1", "--oracle"]);
    assert_exit(&out, 0);
    assert_eq!(stderr_of(&out), "oracle agree (3 subsets)\n");
}

#[test]
fn enum_exits_nonzero_on_an_empty_stream() {
    let out = run("sat.cnf", &["enum", "--all-units"]);
    assert_exit(&out, 1);
    assert_eq!(stdout_of(&out), "");
}

#[test]
fn enum_rejects_contradictory_flag_mixes() {
    let out = run("union.cnf", &["enum", "--all-units", "--trace"]);
    assert_exit(&out, 2);
    let out = run("union.cnf", &["enum", "--unit", "1", "--trace", "--json"]);
    assert_exit(&out, 2);
    let out = run("union.cnf", &["enum"]);
    assert_exit(&out, 2);
}

#[test]
fn cdpp_translations_match_the_golden_files() {
    let out = run("ring.st", &["cdpp"]);
    assert_exit(&out, 0);
    assert_eq!(stdout_of(&out), golden("ring_tfc.cnf"));
    let out = run("ring.st", &["cdpp", "--prime"]);
    assert_exit(&out, 0);
    assert_eq!(stdout_of(&out), golden("ring_tfc_prime.cnf"));
}

#[test]
fn cdpp_distinguishes_walks_from_cycles() {
    for (flag, verdict, code) in [
        ("--check-walk", "yes\n", 0),
        ("--check-cycle", "yes\n", 0),
    ] {
        let out = run("ring.st", &["cdpp", flag]);
        assert_exit(&out, code);
        assert_eq!(stdout_of(&out), verdict);
    }
    // the hub digraph closes a walk through both endpoints, but every
    // return path reuses the hub vertex
    let out = run("hub.st", &["cdpp", "--check-walk"]);
    assert_exit(&out, 0);
    assert_eq!(stdout_of(&out), "yes\n");
    let out = run("hub.st", &["cdpp", "--check-cycle"]);
    assert_exit(&out, 1);
    assert_eq!(stdout_of(&out), "no\n");
}

#[test]
fn cdpp_cycle_search_honours_the_size_bound() {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_twomus"));
    cmd.arg("cdpp")
        .arg(fixture("ring.st"))
        .arg("--check-cycle")
        .env("TWOMUS_BOUND", "2");
    let out = cmd.output().expect("binary runs");
    assert_exit(&out, 3);
    assert!(stderr_of(&out).contains("exceeds the bound"));
}

#[test]
fn cdpp_rejects_malformed_digraph_text() {
    let out = run("union.cnf", &["cdpp"]);
    assert_exit(&out, 2);
    assert!(stderr_of(&out).contains("unknown directive"));
}
