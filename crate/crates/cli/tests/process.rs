use std::io::{BufRead, BufReader, Read, Write};
use std::net::TcpStream;
use std::process::{Command, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_chipfire"))
}

#[test]
fn play_over_stdin() {
    let mut child = bin()
        .arg("play")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let script = [
        r#"{"op":"new","complex":{"facets":[[1,2,3],[2,3,4]]},"dim":1,"chain":[-1,2,-3,2,-1]}"#,
        r#"{"op":"move","session":"s1","face":[1,3],"kind":"lend"}"#,
        "",
        r#"{"op":"move","session":"s1","face":[2,3],"kind":"borrow","id":"last"}"#,
        r#"{"op":"undo","session":"nope"}"#,
    ];
    {
        let mut stdin = child.stdin.take().unwrap();
        for line in script {
            writeln!(stdin, "{line}").unwrap();
        }
    }
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let lines: Vec<Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0]["session"], "s1");
    assert_eq!(lines[0]["status"]["won"], false);
    assert_eq!(lines[2]["id"], "last");
    assert_eq!(lines[2]["status"]["won"], true);
    assert_eq!(lines[2]["status"]["current"], serde_json::json!([1, 0, 0, 1, 0]));
    assert!(lines[3]["error"].is_string());
}

#[test]
fn serve_answers_post_requests() {
    let mut child = bin()
        .args(["serve", "--addr", "127.0.0.1:0"])
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut banner = String::new();
    BufReader::new(child.stderr.take().unwrap())
        .read_line(&mut banner)
        .unwrap();
    let addr = banner.trim().strip_prefix("listening on http://").unwrap().to_string();

    let body = r#"{"op":"new","complex":{"facets":[[1,2,3]]},"dim":1,"chain":[-1,1,-1]}"#;
    let mut stream = TcpStream::connect(&addr).unwrap();
    write!(
        stream,
        "POST / HTTP/1.1\r\nHost: {addr}\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
        body.len()
    )
    .unwrap();
    let mut reply = String::new();
    stream.read_to_string(&mut reply).unwrap();
    child.kill().unwrap();
    let _ = child.wait();

    assert!(reply.starts_with("HTTP/1.1 200"), "{reply}");
    assert!(reply.contains("Access-Control-Allow-Origin: *"));
    let json: Value = serde_json::from_str(reply.split("\r\n\r\n").nth(1).unwrap()).unwrap();
    assert_eq!(json["session"], "s1");
    assert_eq!(json["status"]["degree"], serde_json::json!([0, 0]));
}

#[test]
fn bad_input_exits_with_two() {
    let out = bin()
        .args(["analyze", "/nonexistent/complex.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("chipfire: "));

    let mut child = bin()
        .args(["winnable", "-", "-i", "1", "--chain", "[1,2]"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"facets":[[1,2,3]]}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn pretty_forest_table() {
    let corpus = concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus");
    let out = bin()
        .current_dir(corpus)
        .args(["--pretty", "forests", "-i", "2", "tetra.json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.ends_with("tau_2 = 4\n"));
}
