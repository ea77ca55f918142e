//! End-to-end behavior of the sptool binary: outputs, exit codes, stdin
//! handling, and the JSON mode.

use std::io::Write as _;
use std::process::{Command, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sptool"))
}

fn run(args: &[&str]) -> (String, String, i32) {
    let output = bin().args(args).output().expect("binary runs");
    (
        String::from_utf8(output.stdout).unwrap(),
        String::from_utf8(output.stderr).unwrap(),
        output.status.code().expect("no signal"),
    )
}

fn run_with_stdin(args: &[&str], input: &str) -> (String, i32) {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    let output = child.wait_with_output().unwrap();
    (
        String::from_utf8(output.stdout).unwrap(),
        output.status.code().expect("no signal"),
    )
}

const PI3: &str = r#"{"voters": [[1,2,3], [2,3,1], [3,1,2]]}"#;
const L3: &str =
    r#"{"n": 3, "orders": [[1,2,3],[1,3,2],[2,1,3],[2,3,1],[3,1,2],[3,2,1]]}"#;

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(contents.as_bytes()).unwrap();
    file
}

#[test]
fn encode_and_decode_verbs() {
    let (stdout, _, code) = run(&["encode", "34251"]);
    assert_eq!(stdout, "+-+-\n");
    assert_eq!(code, 0);

    let (stdout, _, code) = run(&["decode", "++-+"]);
    assert_eq!(stdout, "23415\n");
    assert_eq!(code, 0);

    // sign strings may start with '-'
    let (stdout, _, code) = run(&["decode", "--+-"]);
    assert_eq!(stdout, "43251\n");
    assert_eq!(code, 0);

    let (stdout, _, code) = run(&["decode", ""]);
    assert_eq!(stdout, "1\n");
    assert_eq!(code, 0);
}

#[test]
fn decode_inverts_encode_for_every_small_order() {
    let (listing, _, _) = run(&["enum", "4"]);
    for line in listing.lines() {
        let (signs, _, code) = run(&["encode", line]);
        assert_eq!(code, 0);
        let (back, _, _) = run(&["decode", signs.trim_end()]);
        assert_eq!(back.trim_end(), line);
    }
}

#[test]
fn enum_verb() {
    let (stdout, _, code) = run(&["enum", "4"]);
    assert_eq!(
        stdout,
        "1234\n2134\n2314\n2341\n3214\n3241\n3421\n4321\n"
    );
    assert_eq!(code, 0);

    let (stdout, _, _) = run(&["enum", "4", "--counts"]);
    assert_eq!(stdout, "1 3 3 1\n");

    let (stdout, _, _) = run(&["enum", "3", "--json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(value["n"], 3);
    assert_eq!(value["orders"].as_array().unwrap().len(), 4);
}

#[test]
fn poset_verb() {
    let (edges, _, code) = run(&["poset", "3"]);
    assert_eq!(edges, "123 -> 213\n213 -> 231\n231 -> 321\n");
    assert_eq!(code, 0);

    let (dot, _, _) = run(&["poset", "3", "--dot"]);
    assert!(dot.starts_with("digraph bruhat {"));
    assert!(dot.contains("\"123\" -> \"213\";"));

    let file = temp_file(L3);
    let (edges, _, _) = run(&["poset", "--domain", file.path().to_str().unwrap()]);
    assert_eq!(edges.lines().count(), 6);

    let (_, stderr, code) = run(&["poset"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("provide either N or --domain"));
}

#[test]
fn check_verb_reports_and_exit_codes() {
    let (sp_json, _, _) = run(&["enum", "4", "--json"]);
    let file = temp_file(&sp_json);
    let (report, _, code) = run(&["check", "--domain", file.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(
        report,
        "single-peaked: true\nminimally-rich: true\nmaximal-width: true\n\
         semi-connected: true\npeak-pit: true\nlattice: true\n"
    );

    let file = temp_file(L3);
    let (report, _, code) = run(&["check", "--domain", file.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(report.contains("single-peaked: false"));
    assert!(report.contains("peak-pit: false"));
    assert!(report.contains("lattice: true"));
}

#[test]
fn majority_verb() {
    let file = temp_file(PI3);
    let (stdout, _, code) = run(&["majority", "--profile", file.path().to_str().unwrap()]);
    assert_eq!(stdout, "1 > 2\n2 > 3\n3 > 1\ncycle: true\n");
    assert_eq!(code, 1);

    // stdin via '-'
    let (stdout, code) = run_with_stdin(&["majority", "--profile", "-"], PI3);
    assert!(stdout.ends_with("cycle: true\n"));
    assert_eq!(code, 1);

    let acyclic = temp_file(r#"{"voters": [[2,3,1,4]]}"#);
    let (stdout, _, code) = run(&["majority", "--profile", acyclic.path().to_str().unwrap()]);
    assert!(stdout.ends_with("cycle: false\n"));
    assert_eq!(code, 0);

    let even = temp_file(r#"{"voters": [[1,2,3], [3,2,1]]}"#);
    let (_, stderr, code) = run(&["majority", "--profile", even.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("even number of voters"));
}

#[test]
fn verify_cd_verb() {
    let (sp_json, _, _) = run(&["enum", "4", "--json"]);
    let file = temp_file(&sp_json);
    let (stdout, _, code) = run(&[
        "verify-cd",
        "--domain",
        file.path().to_str().unwrap(),
        "--m",
        "3",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("condorcet: true"));
    assert!(stdout.contains("profiles-checked: 512"));

    let file = temp_file(L3);
    let (stdout, _, code) = run(&[
        "verify-cd",
        "--domain",
        file.path().to_str().unwrap(),
        "--m",
        "3",
    ]);
    assert_eq!(code, 1);
    assert!(stdout.contains("condorcet: false"));
    assert!(stdout.contains(r#"witness: {"voters":[[1,2,3],[2,3,1],[3,1,2]]}"#));

    // budget errors are validation errors, not failed verdicts
    let (_, stderr, code) = run(&[
        "verify-cd",
        "--domain",
        file.path().to_str().unwrap(),
        "--m",
        "3",
        "--max-profiles",
        "10",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("resource limit exceeded"));

    let (_, stderr, code) = run(&[
        "verify-cd",
        "--domain",
        file.path().to_str().unwrap(),
        "--m",
        "2",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("even number of voters"));
}

#[test]
fn tiling_and_intervals_verbs() {
    let (svg, _, code) = run(&["tiling", "4", "--highlight", "2314"]);
    assert_eq!(code, 0);
    assert!(svg.starts_with("<?xml"));
    assert_eq!(svg.matches("<polygon").count(), 6);
    assert_eq!(svg.matches("<polyline").count(), 1);

    let (stdout, _, _) = run(&["tiling", "4", "--json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(value["tiles"], 6);

    let (dot, _, code) = run(&["intervals", "2"]);
    assert_eq!(code, 0);
    assert_eq!(dot.matches(" -> ").count(), 4);

    let (_, stderr, code) = run(&["tiling", "4", "--highlight", "1324"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("not single-peaked"));
}

#[test]
fn json_mode_round_trips_through_check() {
    // checking an enumerated domain reports every property true
    for n in ["5", "8"] {
        let (sp_json, _, _) = run(&["enum", n, "--json"]);
        let (report, code) = run_with_stdin(&["check", "--domain", "-"], &sp_json);
        assert_eq!(code, 0, "n = {n}");
        assert!(!report.contains("false"), "n = {n}: {report}");
    }
}

#[test]
fn validation_error_exit_codes() {
    let cases: &[&[&str]] = &[
        &["encode", "1324"],
        &["encode", "12x"],
        &["decode", "+*"],
        &["enum", "0"],
        &["enum", "30"],
        &["check", "--domain", "/nonexistent/file.json"],
    ];
    for args in cases {
        let (_, stderr, code) = run(args);
        assert_eq!(code, 2, "args {args:?} gave stderr {stderr}");
        assert!(stderr.starts_with("error: "), "args {args:?}");
    }
    // clap usage errors also exit 2
    let (_, _, code) = run(&["no-such-verb"]);
    assert_eq!(code, 2);
}
