use std::process::{Command, Output};

fn ffdet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffdet"))
        .args(args)
        .output()
        .expect("spawn ffdet")
}

#[test]
fn det_tq_for_q5() {
    let out = ffdet(&["det-tq", "--q", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["computed"], "3");
    assert_eq!(report["predicted"], "3");
    assert_eq!(report["matched"], true);
}

#[test]
fn det_tq_rejects_q7() {
    let out = ffdet(&["det-tq", "--q", "7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn unknown_command_is_a_usage_error() {
    assert_eq!(ffdet(&["prove-everything"]).status.code(), Some(2));
    assert_eq!(ffdet(&["zoo", "--jobs", "0"]).status.code(), Some(2));
}

#[test]
fn cache_file_is_reused() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("moduli.txt");
    let cache = cache.to_str().unwrap();
    let first = ffdet(&["field-info", "--p", "5", "--r", "3", "--cache", cache]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(cache).unwrap(), "5 3 1,0,1,1\n");
    let second = ffdet(&["field-info", "--p", "5", "--r", "3", "--cache", cache]);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(std::fs::read_to_string(cache).unwrap().lines().count(), 1);
}

#[test]
fn timing_flag_fills_elapsed() {
    let plain = ffdet(&["conjecture", "--max-p", "50"]);
    let text = String::from_utf8(plain.stdout).unwrap();
    assert!(text.lines().all(|l| l.ends_with(r#""elapsed_ms":0}"#)));
    let timed = ffdet(&["conjecture", "--max-p", "50", "--timing"]);
    assert_eq!(timed.status.code(), Some(0));
}
