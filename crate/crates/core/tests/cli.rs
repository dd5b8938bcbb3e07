//! End-to-end runs of the `ordtypes` binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn ordtypes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordtypes")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn embeds_prints_answer_and_rule() {
    let o = ordtypes(&["type", "embeds", "w", "q"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("YES"));
}

#[test]
fn json_output_parses() {
    let o = ordtypes(&["--json", "type", "embeds", "q", "w"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["answer"], "NO");
    assert!(v["certificate"]["rule"].is_string());
}

#[test]
fn expect_controls_exit_code() {
    assert_eq!(ordtypes(&["--expect", "NO", "type", "embeds", "q", "w"]).status.code(), Some(0));
    assert_eq!(ordtypes(&["--expect", "YES", "type", "embeds", "q", "w"]).status.code(), Some(2));
    assert_eq!(ordtypes(&["--expect", ">", "ord", "cmp", "w^(2)", "w*3"]).status.code(), Some(0));
}

#[test]
fn syntax_errors_exit_with_one() {
    let o = ordtypes(&["type", "embeds", "w +", "q"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
}

#[test]
fn ordinal_commands() {
    assert_eq!(stdout(&ordtypes(&["ord", "cnf", "w*2 + w"])).trim(), "w*3");
    let o = ordtypes(&["--json", "ord", "classify", "w^(w)"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["untranscendable"], true);
    assert_eq!(v["s_untranscendable"], false);
}

#[test]
fn hierarchy_spec_from_stdin() {
    let spec = r#"{"kind":"shuffle","generator":{"shape":"constant","term":"1"}}"#;
    let mut child = Command::new(env!("CARGO_BIN_EXE_ordtypes"))
        .args(["--json", "hier", "witness", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(spec.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["witness"].is_string(), "{v}");
}

#[test]
fn game_verification_succeeds() {
    let o = ordtypes(&["--expect", "true", "game", "verify", "--rounds", "2", "--count", "50"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
