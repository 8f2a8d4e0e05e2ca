// SPDX-License-Identifier: Apache-2.0

use std::io::{BufRead, Write};
use std::net::TcpListener;

use anyhow::Context;
use ramsey_core::arena::Session;
use tungstenite::Message;

/// Newline-delimited JSON on standard input and output.
pub fn stdio() -> anyhow::Result<()> {
    let mut session = Session::new();
    let stdin = std::io::stdin();
    let mut out = std::io::stdout().lock();
    for line in stdin.lock().lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        for reply in session.handle_line(&line) {
            writeln!(out, "{reply}")?;
        }
        out.flush()?;
    }
    Ok(())
}

/// One thread and one game per connection. Each text frame may hold
/// several newline-separated requests; each reply is its own frame.
pub fn websocket(port: u16) -> anyhow::Result<()> {
    let listener = TcpListener::bind(("127.0.0.1", port)).with_context(|| format!("binding port {port}"))?;
    eprintln!("listening on ws://127.0.0.1:{port}");
    for stream in listener.incoming() {
        let stream = match stream {
            Ok(s) => s,
            Err(e) => {
                eprintln!("accept failed: {e}");
                continue;
            }
        };
        std::thread::spawn(move || {
            if let Err(e) = connection(stream) {
                eprintln!("session ended: {e}");
            }
        });
    }
    Ok(())
}

fn connection(stream: std::net::TcpStream) -> anyhow::Result<()> {
    let mut ws = tungstenite::accept(stream)?;
    let mut session = Session::new();
    loop {
        let text = match ws.read()? {
            Message::Text(t) => t,
            Message::Close(_) => return Ok(()),
            _ => continue,
        };
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            for reply in session.handle_line(line) {
                ws.send(Message::text(reply))?;
            }
        }
    }
}
