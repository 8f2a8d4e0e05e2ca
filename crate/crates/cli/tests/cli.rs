// SPDX-License-Identifier: Apache-2.0

use std::io::{BufRead, BufReader, Write};
use std::process::{Command, Stdio};

fn ramsey(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_ramsey")).args(args).output().unwrap()
}

#[test]
fn verify_cycle_strategy_exits_zero() {
    let out = ramsey(&["verify", "--strategy", "p1-cycle:4", "--role", "p1", "--target", "cycle:4", "--board", "single", "--budget", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["verdict"]["verdict"], "pass");
}

#[test]
fn failed_verification_exits_one() {
    let out = ramsey(&["verify", "--strategy", "p1-cycle:4", "--role", "p1", "--target", "cycle:4", "--board", "single", "--budget", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn family_lists_three_graphs() {
    let out = ramsey(&["enumerate-family", "--t", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().all(|l| l.split(' ').count() == 7));
}

#[test]
fn usage_errors_exit_two() {
    let seat = ramsey(&["play", "--p1", "p2-defense:t=3", "--p2", "p1-k23", "--target", "k2ts:3,0", "--board", "double"]);
    assert_eq!(seat.status.code(), Some(2));
    let bad_target = ramsey(&["solve", "--target", "k2ts:x", "--board", "single", "--budget", "2"]);
    assert_eq!(bad_target.status.code(), Some(2));
    assert_eq!(ramsey(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn play_writes_a_record() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("game.json");
    let out = ramsey(&[
        "play", "--p1", "p1-cycle:5", "--p2", "random:seed=7", "--target", "cycle:5", "--board", "single",
        "--budget", "10", "--out", path.to_str().unwrap(), "--expect-winner", "p1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let record: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(record["result"]["winner"], "p1");
    assert_eq!(record["moves"][0]["index"], 1);
}

#[test]
fn solve_reports_an_outcome() {
    let out = ramsey(&["solve", "--target", "cycle:3", "--board", "single", "--budget", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["outcome"]["variant"], "mover_wins_in");
}

#[test]
fn stdio_session_round_trip() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ramsey"))
        .args(["serve", "--stdio"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let mut stdin = child.stdin.take().unwrap();
    writeln!(stdin, r#"{{"type":"new_game","board":"single","target":"cycle:4","engine_role":"p1","engine":"p1-cycle:4"}}"#).unwrap();
    writeln!(stdin, r#"{{"type":"move","component":1,"u":0,"v":1}}"#).unwrap();
    writeln!(stdin, "oops").unwrap();
    drop(stdin);
    let lines: Vec<String> = BufReader::new(child.stdout.take().unwrap()).lines().map(|l| l.unwrap()).collect();
    assert!(child.wait().unwrap().success());
    let kinds: Vec<String> = lines
        .iter()
        .map(|l| {
            let v: serde_json::Value = serde_json::from_str(l).unwrap();
            format!("{}{}", v["type"].as_str().unwrap(), v["code"].as_str().map(|c| format!(":{c}")).unwrap_or_default())
        })
        .collect();
    assert_eq!(kinds, ["engine_move", "state", "error:illegal_move", "error:bad_request"]);
}

#[test]
fn websocket_session_round_trip() {
    let port = std::net::TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap().port();
    let mut server = Command::new(env!("CARGO_BIN_EXE_ramsey"))
        .args(["serve", "--port", &port.to_string()])
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    let url = format!("ws://127.0.0.1:{port}");
    let mut socket = None;
    for _ in 0..100 {
        match tungstenite::connect(&url) {
            Ok((s, _)) => {
                socket = Some(s);
                break;
            }
            Err(_) => std::thread::sleep(std::time::Duration::from_millis(50)),
        }
    }
    let mut ws = socket.expect("server came up");
    ws.send(tungstenite::Message::text(r#"{"type":"new_game","board":"double","target":"k2ts:4,1","engine_role":"p2","engine":"p2-defense:t=3"}"#))
        .unwrap();
    let state: serde_json::Value = serde_json::from_str(ws.read().unwrap().to_text().unwrap()).unwrap();
    assert_eq!(state["type"], "state");
    assert_eq!(state["status"], "ongoing");
    ws.send(tungstenite::Message::text(r#"{"type":"move","component":1,"u":-1,"v":-1}"#)).unwrap();
    let reply: serde_json::Value = serde_json::from_str(ws.read().unwrap().to_text().unwrap()).unwrap();
    assert_eq!(reply["type"], "engine_move");
    assert_eq!(reply["rationale"], "case3a");
    server.kill().unwrap();
    server.wait().unwrap();
}
