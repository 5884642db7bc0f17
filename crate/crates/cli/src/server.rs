use std::io::{BufRead, Write};
use std::sync::Arc;

use chipfire_core::Engine;
use tiny_http::{Header, Method, Response, Server};

use crate::input::CliResult;

/// Reads requests from standard input, one per line, until end of input.
pub fn play() -> CliResult<()> {
    let engine = Engine::new();
    let stdin = std::io::stdin();
    let mut out = std::io::stdout().lock();
    for line in stdin.lock().lines() {
        let line = line.map_err(|e| format!("reading standard input: {e}"))?;
        if line.trim().is_empty() {
            continue;
        }
        writeln!(out, "{}", engine.handle_line(&line)).map_err(|e| e.to_string())?;
        out.flush().map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn header(name: &str, value: &str) -> Header {
    Header::from_bytes(name.as_bytes(), value.as_bytes()).expect("ascii header")
}

/// POST bodies are protocol requests; the response body is the protocol
/// response.
pub fn serve(addr: &str) -> CliResult<()> {
    let server = Server::http(addr).map_err(|e| format!("binding {addr}: {e}"))?;
    let local = server
        .server_addr()
        .to_ip()
        .map(|a| a.to_string())
        .unwrap_or_else(|| addr.to_string());
    eprintln!("listening on http://{local}");
    let engine = Arc::new(Engine::new());
    for mut request in server.incoming_requests() {
        let engine = Arc::clone(&engine);
        std::thread::spawn(move || {
            let cors = header("Access-Control-Allow-Origin", "*");
            let response = match request.method() {
                Method::Options => Response::from_string("")
                    .with_header(header("Access-Control-Allow-Methods", "POST, OPTIONS"))
                    .with_header(header("Access-Control-Allow-Headers", "Content-Type")),
                Method::Post => {
                    let mut body = String::new();
                    match request.as_reader().read_to_string(&mut body) {
                        Ok(_) => Response::from_string(engine.handle_line(&body))
                            .with_header(header("Content-Type", "application/json")),
                        Err(e) => Response::from_string(format!("{{\"error\":\"{e}\"}}"))
                            .with_status_code(400),
                    }
                }
                _ => Response::from_string("POST protocol requests here\n").with_status_code(405),
            };
            let _ = request.respond(response.with_header(cors));
        });
    }
    Ok(())
}
