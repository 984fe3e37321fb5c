use std::io::Write;
use std::process::{Command, Stdio};

use lattice_bijections::cli::{self, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};
use lattice_bijections::oracle::{Failure, VerificationReport};

const PAPER_B: &str = "+-+---++++--++++--+-++-----+";
const PAPER_P: &str = "++-+++---+++--++++-+--+++++-";

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str], input: &str) -> Outcome {
    let mut stdin = input.as_bytes();
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let mut full = vec!["lattice-bijections"];
    full.extend_from_slice(args);
    let code = cli::run(full, &mut stdin, &mut stdout, &mut stderr);
    Outcome {
        code,
        stdout: String::from_utf8(stdout).unwrap(),
        stderr: String::from_utf8(stderr).unwrap(),
    }
}

#[test]
fn map_direct() {
    let out = run(&["map", "--map", "direct"], "+-\n");
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, "++\n"));

    let out = run(&["map", "--map", "direct-inverse"], &format!("{PAPER_P}\n"));
    assert_eq!(out.stdout, format!("{PAPER_B}\n"));
}

#[test]
fn map_reports_domain_errors_and_continues() {
    let out = run(&["map", "--map", "direct"], "--++\n+-\n+-+\n");
    assert_eq!(out.code, EXIT_FAILURE);
    assert_eq!(out.stdout, "++\n");
    let lines: Vec<&str> = out.stderr.lines().collect();
    assert_eq!(
        lines[0],
        "line 1: expected balanced sequence starting with '+'"
    );
    assert!(lines[1].starts_with("line 3: odd length 3"));
}

#[test]
fn map_all_kinds() {
    let cases = [
        ("indirect", "+-++", "-+++"),
        ("indirect-inverse", "-+++", "+-++"),
        ("full", "-+", "--"),
        ("full-inverse", "--", "-+"),
    ];
    for (kind, input, expected) in cases {
        let out = run(&["map", "--map", kind], &format!("{input}\n"));
        assert_eq!(out.code, EXIT_OK, "{kind}");
        assert_eq!(out.stdout.trim_end(), expected, "{kind}");
    }
    // empty line is the empty sequence
    let out = run(&["map", "--map", "full"], "\n");
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, "\n"));
}

#[test]
fn classify_records() {
    let out = run(&["classify"], "+-+-\n++-+\n--\n\n");
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(
        out.stdout,
        "n=2 sum=0 balanced\nn=2 sum=2 positive zero-free\nn=1 sum=-2 negative zero-free\nn=0 sum=0 balanced positive zero-free\n"
    );
    let out = run(&["classify"], "+*\n");
    assert_eq!(out.code, EXIT_FAILURE);
    assert!(out.stderr.starts_with("line 1: invalid character '*'"));
}

#[test]
fn count_agrees_with_enumeration() {
    let out = run(&["count", "--n", "2", "--class", "balanced"], "");
    assert_eq!(
        (out.code, out.stdout.as_str()),
        (EXIT_OK, "formula=6 enumerated=6 agree\n")
    );
    let out = run(&["count", "--n", "5", "--class", "positive"], "");
    assert_eq!(out.stdout, "formula=126 enumerated=126 agree\n");
    let out = run(
        &[
            "count",
            "--n",
            "4",
            "--class",
            "P_nk",
            "--k",
            "2",
            "--workers",
            "3",
        ],
        "",
    );
    assert_eq!(out.stdout, "formula=14 enumerated=14 agree\n");
}

#[test]
fn count_beyond_cap_prints_formula_only() {
    let out = run(&["count", "--n", "40", "--class", "balanced"], "");
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(
        out.stdout,
        "formula=107507208733336176461620 enumerated=skipped (n=40 exceeds enumeration limit 12)\n"
    );
}

#[test]
fn count_rejects_bad_k() {
    let out = run(
        &["count", "--n", "2", "--class", "sum-start-plus", "--k", "3"],
        "",
    );
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("k=3 is out of range"));
    let out = run(&["count", "--n", "2", "--class", "sum-start-plus"], "");
    assert_eq!(out.code, EXIT_USAGE);
    let out = run(
        &["count", "--n", "2", "--class", "sum-start-plus", "--k=-1"],
        "",
    );
    assert_eq!(out.code, EXIT_USAGE);
}

#[test]
fn verify_suites() {
    let out = run(&["verify", "--suite", "direct", "--n", "6"], "");
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.contains("direct n=6 checked=924 failed=0 PASS"));
    assert!(out.stdout.ends_with("total: 6 reports, 0 failed\n"));

    let out = run(&["verify", "--suite", "all", "--n", "6"], "");
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(!out.stdout.contains("FAIL"));
}

#[test]
fn verify_output_is_worker_independent() {
    let one = run(
        &["verify", "--suite", "all", "--n", "5", "--workers", "1"],
        "",
    );
    let eight = run(
        &["verify", "--suite", "all", "--n", "5", "--workers", "8"],
        "",
    );
    assert_eq!(one.stdout, eight.stdout);
}

#[test]
fn verify_json_records() {
    let out = run(&["verify", "--suite", "catalan", "--n", "2", "--json"], "");
    assert_eq!(out.code, EXIT_OK);
    let records: Vec<serde_json::Value> = out
        .stdout
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(records.len(), 3);
    assert_eq!(records[2]["name"], "catalan");
    assert_eq!(records[2]["n"], 2);
    assert_eq!(records[2]["checked"], 16);
    assert_eq!(records[2]["failed"], 0);
    assert!(records[2]["millis"].is_u64());
}

#[test]
fn verify_limits_and_usage() {
    let out = run(
        &["verify", "--suite", "direct", "--n", "5", "--max-n", "4"],
        "",
    );
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("exceeds the enumeration limit 4"));
    let out = run(&["verify", "--suite", "nope", "--n", "2"], "");
    assert_eq!(out.code, EXIT_USAGE);
    let out = run(
        &["verify", "--suite", "direct", "--n", "2", "--workers", "0"],
        "",
    );
    assert_eq!(out.code, EXIT_USAGE);
    let out = run(&["frobnicate"], "");
    assert_eq!(out.code, EXIT_USAGE);
}

#[test]
fn failing_reports_are_printed_and_exit_nonzero() {
    let mut report = VerificationReport::new("direct", 3);
    report.checked = 20u32.into();
    report
        .failures
        .push(Failure::new("+-+-+-", "backward(forward) gave +-++--"));
    let mut out = Vec::new();
    cli::write_reports(std::slice::from_ref(&report), false, false, &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    assert_eq!(
        text,
        "direct n=3 checked=20 failed=1 FAIL\n  +-+-+-: backward(forward) gave +-++--\ntotal: 1 reports, 1 failed\n"
    );
    assert_eq!(cli::exit_code_for(&[report]), EXIT_FAILURE);
    assert_eq!(cli::exit_code_for(&[]), EXIT_OK);
}

#[test]
fn render_modes() {
    let out = run(&["render"], "+-\n++--\n");
    assert_eq!(out.stdout, "/\\\n\n /\\\n/  \\\n");

    let out = run(
        &["render", "--mode", "grid", "--annotate-peaks"],
        &format!("{PAPER_B}\n"),
    );
    assert_eq!(
        out.stdout,
        "[1] 0 1 0 -1 -2 -1 0 1 [2] 1 0 1 2 [3] [4] 3 2 3 2 3 4 3 2 1 0 -1 0\n"
    );

    let out = run(&["render", "--annotate-peaks"], &format!("{PAPER_B}\n"));
    let marker = out.stdout.lines().last().unwrap();
    let columns: Vec<usize> = marker
        .char_indices()
        .filter(|&(_, c)| c == '^')
        .map(|(i, _)| i + 1)
        .collect();
    assert_eq!(columns, [1, 10, 15, 16]);

    let out = run(&["render"], "+x\n");
    assert_eq!(out.code, EXIT_FAILURE);
}

#[test]
fn files_in_and_out() {
    let dir = std::env::temp_dir().join(format!("lattice-bijections-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("in.txt");
    let output = dir.join("out.txt");
    std::fs::write(&input, format!("{PAPER_B}\n+-\n")).unwrap();
    let out = run(
        &[
            "map",
            "--map",
            "direct",
            "--in",
            input.to_str().unwrap(),
            "--out",
            output.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(
        std::fs::read_to_string(&output).unwrap(),
        format!("{PAPER_P}\n++\n")
    );

    let missing = dir.join("missing.txt");
    let out = run(&["classify", "--in", missing.to_str().unwrap()], "");
    assert_eq!(out.code, EXIT_USAGE);
    std::fs::remove_dir_all(&dir).unwrap();
}

fn pipe(args: &[&str], input: &[u8]) -> (Vec<u8>, i32) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lattice-bijections"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    let output = child.wait_with_output().unwrap();
    (output.stdout, output.status.code().unwrap())
}

#[test]
fn binary_pipes_compose() {
    let oracle = lattice_bijections::oracle::Oracle::new();
    let mut input = String::new();
    for b in oracle
        .enumerate(5, lattice_bijections::oracle::SeqFilter::BalancedStartPlus)
        .unwrap()
    {
        input.push_str(&b.to_string());
        input.push('\n');
    }
    let (forward, code) = pipe(&["map", "--map", "direct"], input.as_bytes());
    assert_eq!(code, 0);
    let (back, code) = pipe(&["map", "--map", "direct-inverse"], &forward);
    assert_eq!(code, 0);
    assert_eq!(back, input.as_bytes());

    let (_, code) = pipe(&["map", "--map", "direct"], b"--++\n");
    assert_eq!(code, 1);
}
