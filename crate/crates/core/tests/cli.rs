use std::io::Write;
use std::process::{Command, Output, Stdio};

fn catmouse(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catmouse")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn solve_original_game_on_t_star() {
    let o = catmouse(&["solve", "--graph", "t_star", "--channel", "binary", "--movement", "must-move"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("outcome=mouse"), "{}", stdout(&o));
}

#[test]
fn simulate_path_ends_in_capture_with_witness() {
    let o = catmouse(&["simulate", "--graph", "path:5", "--cat", "transition", "--mouse", "phantom-greedy"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rounds: Vec<&str> = text.lines().filter(|l| l.starts_with("round=")).collect();
    assert!(rounds.last().unwrap().contains("class=0"), "{text}");
    assert!(text.lines().last().unwrap().starts_with("witness="));
    assert!(String::from_utf8_lossy(&o.stderr).contains("outcome=cat"));
}

#[test]
fn gen_emits_all_labeled_trees() {
    let o = catmouse(&["gen", "--n", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("# tree")).count(), 3);
}

#[test]
fn verify_small_suite() {
    let o = catmouse(&["verify", "--suite", "tree-bound", "--n", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("failures=0"));
    let bad = catmouse(&["verify", "--suite", "no-such-suite"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn bad_graph_is_an_error() {
    let o = catmouse(&["solve", "--graph", "nonsense:3"]);
    assert!(!o.status.success());
    assert!(!o.stderr.is_empty());
}

#[test]
fn play_as_mouse_until_input_ends() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_catmouse"))
        .args(["play", "--graph", "path:3", "--role", "mouse"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"0\n").unwrap();
    let o = child.wait_with_output().unwrap();
    let text = stdout(&o);
    assert!(text.contains("captured") || text.contains("session ended"), "{text}");
}
