//! End-to-end tests driving the compiled binary: exit codes, output
//! shapes, artifact round-trips through `verify` in a fresh process, and
//! byte-stability of the JSON stream.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cyclic-split"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn temp_file(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("cyclic-split-it-{}-{name}", std::process::id()))
}

#[test]
fn split_check_emits_the_expected_certificate() {
    let out = run(&[
        "split-check", "--field", "Fp:7", "--d", "3", "--b", "3", "--a", "1",
        "--r", "2", "--s", "1",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("SPLIT"), "{text}");
    assert!(text.contains("alpha + 6*alpha^2"), "{text}");
}

#[test]
fn missing_root_of_unity_is_a_hard_error() {
    let out = run(&["split-check", "--field", "Q", "--d", "3", "--b", "2", "--a", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        stderr(&out).contains("no primitive root of unity"),
        "stderr: {}",
        stderr(&out)
    );
}

#[test]
fn budget_exhaustion_exits_two() {
    let out = run(&[
        "split-check", "--field", "QW:3", "--d", "3", "--b", "2", "--a", "5",
        "--budget", "10",
    ]);
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("INCONCLUSIVE"), "{}", stdout(&out));
}

#[test]
fn example1_reports_the_full_refutation() {
    let out = run(&["example1"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("VERIFIED"), "{text}");
    assert!(text.contains("no solutions"), "{text}");
    assert!(
        text.contains("every sufficient condition fails"),
        "{text}"
    );
}

#[test]
fn form_represent_reports_the_first_hit_in_order() {
    let out = run(&[
        "form-represent", "--field", "Fp:7", "--form", "d=3:[2,3]",
        "--target", "2", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(doc["arguments"][0], "1");
    assert_eq!(doc["arguments"][1], "0");
}

#[test]
fn tits_check_finds_the_zero_vector() {
    let out = run(&[
        "tits-check", "--field", "Fp:7", "--b", "3", "--a", "2", "--c", "5",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("NOT a Jordan division algebra"), "{text}");
    assert!(text.contains("N(v) = 0"), "{text}");
}

#[test]
fn artifacts_verify_from_a_fresh_process_and_tampering_fails() {
    let cases: &[(&str, &[&str])] = &[
        ("sc.json", &[
            "split-check", "--field", "Fp:7", "--b", "3", "--a", "1",
            "--r", "2", "--s", "1",
        ]),
        ("co.json", &["corollary1", "--field", "Fp:7", "--b", "3", "--a", "2"]),
        ("ex.json", &["example1", "--degree-bound", "2"]),
        ("ti.json", &["tits-check", "--field", "Fp:7", "--b", "3", "--a", "2", "--c", "5"]),
        ("fr.json", &[
            "form-represent", "--field", "Fp:7", "--form", "d=3:[2,3]", "--target", "2",
        ]),
    ];
    for (name, args) in cases {
        let path = temp_file(name);
        let path_arg = path.to_str().unwrap();
        let mut full = args.to_vec();
        full.extend_from_slice(&["--output", path_arg]);
        let out = run(&full);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", stderr(&out));

        let verify = run(&["verify", path_arg]);
        assert_eq!(verify.status.code(), Some(0), "{name}: {}", stderr(&verify));
        assert!(stdout(&verify).contains("VERIFIED"), "{name}: {}", stdout(&verify));

        // Flip one stored value; verification must reject the document.
        let raw = std::fs::read_to_string(&path).unwrap();
        let tampered = tamper(name, &raw);
        std::fs::write(&path, tampered).unwrap();
        let verify = run(&["verify", path_arg]);
        assert_eq!(verify.status.code(), Some(1), "{name} accepted tampering");

        let _ = std::fs::remove_file(&path);
    }
}

/// One targeted corruption per document shape.
fn tamper(name: &str, raw: &str) -> String {
    let mut value: serde_json::Value = serde_json::from_str(raw).unwrap();
    match name {
        "sc.json" => value["certificate"]["witness"][1] = "5".into(),
        "co.json" => value["radicand"] = "5".into(),
        "ex.json" => value["norm_computed"] = "x^3".into(),
        "ti.json" => value["scalar"] = "3".into(),
        // Not "2": 2*(2^3) = 2 mod 7 would be another honest representation.
        "fr.json" => value["arguments"][0] = "0".into(),
        _ => unreachable!(),
    }
    serde_json::to_string_pretty(&value).unwrap()
}

#[test]
fn no_claim_records_verify_to_exit_two() {
    let path = t_path_no_claim();
    let path_arg = path.to_str().unwrap();
    let out = run(&[
        "form-represent", "--field", "Fp:7", "--form", "d=3:[1]", "--target", "2",
        "--output", path_arg,
    ]);
    assert_eq!(out.status.code(), Some(2));
    let verify = run(&["verify", path_arg]);
    assert_eq!(verify.status.code(), Some(2), "{}", stdout(&verify));
    assert!(stdout(&verify).contains("NO CLAIM"), "{}", stdout(&verify));
    let _ = std::fs::remove_file(&path);
}

fn t_path_no_claim() -> PathBuf {
    temp_file("nc.json")
}

#[test]
fn json_stream_is_byte_stable_across_runs_and_thread_counts() {
    let base = [
        "split-check", "--field", "Fp:13", "--b", "2", "--a", "6",
        "--format", "json",
    ];
    let first = run(&base);
    let second = run(&base);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout, "same invocation, different bytes");

    let mut with_threads = base.to_vec();
    with_threads.extend_from_slice(&["--threads", "4"]);
    let third = run(&with_threads);
    assert_eq!(first.stdout, third.stdout, "thread count changed the result");
}
