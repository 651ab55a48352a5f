use std::path::PathBuf;
use std::process::{Command, Output};

use crepant::cli::report::*;
use crepant::data::{embedded_files, DATA_DIR_ENV};
use proptest::prelude::*;

fn crepant(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crepant"))
        .args(args)
        .env_remove(DATA_DIR_ENV)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data_copy(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("crepant-data-{tag}-{}", std::process::id()));
    for (rel, text) in embedded_files() {
        let p = dir.join(rel);
        std::fs::create_dir_all(p.parent().unwrap()).unwrap();
        std::fs::write(p, text).unwrap();
    }
    dir
}

#[test]
fn localization_e6_passes() {
    let o = crepant(&["verify", "localization", "--group", "E6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("-1/(288*t)"));
}

#[test]
fn jfunction_order_four_passes() {
    let o = crepant(&["verify", "jfunction", "--order", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn wronskian_passes() {
    let o = crepant(&["verify", "wronskian", "--order", "8", "--format", "jsonl"]);
    assert_eq!(o.status.code(), Some(0));
    let reps = parse_jsonl(&stdout(&o)).unwrap();
    assert_eq!(reps.len(), 1);
    assert!(reps[0].passed());
}

#[test]
fn three_point_e8_round_trips() {
    let o = crepant(&["verify", "three-point", "--group", "E8", "--format", "jsonl"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let reps = parse_jsonl(&text).unwrap();
    assert_eq!(emit_jsonl(&reps), text);
    let full = reps[0].checks.iter().find(|c| c.id == "table.full").unwrap();
    assert_eq!(full.computed, "0 mismatches in 165 triples");
    let b = reps[0].checks.iter().find(|c| c.id == "table.[1][ab][ab]").unwrap();
    assert_eq!(b.expected, "1/4");
}

#[test]
fn failing_check_exits_one() {
    let o = crepant(&["verify", "change-of-vars", "--group", "A2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL field"));
    let o = crepant(&["verify", "change-of-vars", "--group", "D5"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(crepant(&["verify", "localization", "--group", "Q7"]).status.code(), Some(2));
    assert_eq!(crepant(&["verify", "localization", "--group", "D3"]).status.code(), Some(2));
    assert_eq!(crepant(&["verify", "jfunction", "--order", "0"]).status.code(), Some(2));
    assert_eq!(crepant(&["verify", "frobnicate"]).status.code(), Some(2));
    assert_eq!(crepant(&["dump", "--group", "E6", "--what", "nothing"]).status.code(), Some(2));
    let o = crepant(&["--data-dir", "/nonexistent/crepant", "verify", "three-point", "--group", "E7"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn data_dir_flag_beats_environment() {
    let dir = data_copy("flag");
    let o = Command::new(env!("CARGO_BIN_EXE_crepant"))
        .args(["--data-dir", dir.to_str().unwrap(), "verify", "localization", "--group", "E7"])
        .env(DATA_DIR_ENV, "/nonexistent/crepant")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_crepant"))
        .args(["verify", "localization", "--group", "E7"])
        .env(DATA_DIR_ENV, "/nonexistent/crepant")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_crepant"))
        .args(["verify", "localization", "--group", "E7"])
        .env(DATA_DIR_ENV, &dir)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("crepant-out-{}.jsonl", std::process::id()));
    let o = crepant(&["verify", "hurwitz-hodge", "--group", "D5", "--format", "jsonl", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let reps = parse_jsonl(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(reps[0].checks.iter().any(|c| c.id == "psi.[a^2].printed" && c.computed == "1/4"));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify", "hurwitz-hodge", "--group", "E7", "--format", "jsonl"];
    assert_eq!(crepant(&args).stdout, crepant(&args).stdout);
}

#[test]
fn higher_degree_vanishing_is_reported_as_skipped() {
    let o = crepant(&["verify", "hurwitz-hodge", "--group", "E6"]);
    assert!(stdout(&o).contains("skip vanishing.higher_degree"));
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn dumps() {
    let o = crepant(&["dump", "--group", "E6", "--what", "chartable"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("character table of E6, order 24"));
    let o = crepant(&["dump", "--group", "E7", "--what", "graph"]);
    assert!(stdout(&o).contains("E7"));
    let o = crepant(&["dump", "--group", "A1", "--what", "cov-matrix"]);
    assert!(stdout(&o).contains("y0 1 | 0"), "{}", stdout(&o));
}

#[test]
fn sorting_uses_family_order() {
    let mut reps: Vec<Report> = ["D4", "A10", "E6", "A2", "order=3"].iter().map(|c| Report::new("s", *c)).collect();
    sort_reports(&mut reps);
    let ctx: Vec<&str> = reps.iter().map(|r| r.context.as_str()).collect();
    assert_eq!(ctx, ["A2", "A10", "D4", "E6", "order=3"]);
}

fn arb_check() -> impl Strategy<Value = Check> {
    (
        "[a-z.\\[\\]^0-9]{1,12}",
        "[ -~]{0,20}",
        prop_oneof![Just(Source::Printed), Just(Source::ClosedForm), Just(Source::Oracle)],
        "[ -~]{0,20}",
        "[ -~]{0,20}",
        prop_oneof![Just(Status::Pass), Just(Status::Fail), Just(Status::Skipped)],
    )
        .prop_map(|(id, anchor, source, expected, computed, status)| Check { id, anchor, source, expected, computed, status })
}

proptest! {
    #[test]
    fn jsonl_round_trip(
        reps in prop::collection::vec(
            ("[a-z-]{1,10}", "[A-Z0-9=a-z]{1,6}", prop::collection::vec(arb_check(), 0..5), prop::option::of(0u64..10_000)),
            0..4,
        )
    ) {
        let reps: Vec<Report> = reps
            .into_iter()
            .map(|(suite, context, checks, elapsed_ms)| Report { suite, context, checks, elapsed_ms })
            .collect();
        prop_assert_eq!(parse_jsonl(&emit_jsonl(&reps)).unwrap(), reps);
    }
}
