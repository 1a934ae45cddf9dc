//! Local HTTP host for the inspector: the bundle at `/bundle.json`, static
//! assets for everything else. Requests are answered one at a time.

use std::fs;
use std::io::{self, BufRead, BufReader, Write};
use std::net::{Ipv4Addr, TcpListener, TcpStream};
use std::path::{Component, Path, PathBuf};
use std::time::Duration;

use anyhow::{bail, Context, Result};

const PLACEHOLDER_INDEX: &str = r#"<!doctype html>
<html>
<head><meta charset="utf-8"><title>coref-eval inspector</title></head>
<body>
<p>No inspector assets were given (see <code>--assets</code>).</p>
<p>The evaluation bundle is at <a href="/bundle.json">/bundle.json</a>.</p>
</body>
</html>
"#;

pub fn serve(port: u16, bundle: String, assets: Option<&Path>) -> Result<()> {
    let listener = match TcpListener::bind((Ipv4Addr::LOCALHOST, port)) {
        Ok(l) => l,
        Err(e) if e.kind() == io::ErrorKind::AddrInUse => bail!("port {port} is already in use"),
        Err(e) => return Err(e).with_context(|| format!("cannot listen on port {port}")),
    };
    let addr = listener.local_addr()?;
    eprintln!("serving inspector at http://{addr}/ (Ctrl-C to stop)");

    for stream in listener.incoming() {
        let stream = match stream {
            Ok(s) => s,
            Err(e) => {
                eprintln!("warning: connection failed: {e}");
                continue;
            }
        };
        if let Err(e) = answer(stream, &bundle, assets) {
            eprintln!("warning: request failed: {e}");
        }
    }
    Ok(())
}

fn answer(mut stream: TcpStream, bundle: &str, assets: Option<&Path>) -> io::Result<()> {
    stream.set_read_timeout(Some(Duration::from_secs(5)))?;
    let mut reader = BufReader::new(stream.try_clone()?);
    let mut request_line = String::new();
    reader.read_line(&mut request_line)?;
    // Drain the headers; bodies are not expected.
    loop {
        let mut line = String::new();
        if reader.read_line(&mut line)? == 0 || line == "\r\n" || line == "\n" {
            break;
        }
    }

    let mut parts = request_line.split_whitespace();
    let (method, target) = (parts.next().unwrap_or(""), parts.next().unwrap_or(""));
    let path = target.split(['?', '#']).next().unwrap_or("");
    let head_only = method == "HEAD";
    if method != "GET" && !head_only {
        return respond(&mut stream, "405 Method Not Allowed", "text/plain", b"method not allowed\n", false);
    }

    if path == "/bundle.json" {
        return respond(&mut stream, "200 OK", "application/json", bundle.as_bytes(), head_only);
    }
    match asset(path, assets) {
        Some((body, kind)) => respond(&mut stream, "200 OK", kind, &body, head_only),
        None if path == "/" || path == "/index.html" => respond(
            &mut stream,
            "200 OK",
            "text/html; charset=utf-8",
            PLACEHOLDER_INDEX.as_bytes(),
            head_only,
        ),
        None => respond(&mut stream, "404 Not Found", "text/plain", b"not found\n", head_only),
    }
}

fn asset(path: &str, assets: Option<&Path>) -> Option<(Vec<u8>, &'static str)> {
    let root = assets?;
    let relative = PathBuf::from(path.trim_start_matches('/'));
    if !relative.components().all(|c| matches!(c, Component::Normal(_))) {
        return None;
    }
    let mut file = root.join(relative);
    if file.is_dir() {
        file = file.join("index.html");
    }
    let body = fs::read(&file).ok()?;
    Some((body, content_type(&file)))
}

fn content_type(path: &Path) -> &'static str {
    match path.extension().and_then(|e| e.to_str()) {
        Some("html") => "text/html; charset=utf-8",
        Some("js" | "mjs") => "text/javascript",
        Some("css") => "text/css",
        Some("json" | "map") => "application/json",
        Some("svg") => "image/svg+xml",
        Some("png") => "image/png",
        Some("ico") => "image/x-icon",
        Some("wasm") => "application/wasm",
        _ => "application/octet-stream",
    }
}

fn respond(stream: &mut TcpStream, status: &str, kind: &str, body: &[u8], head_only: bool) -> io::Result<()> {
    write!(
        stream,
        "HTTP/1.1 {status}\r\nContent-Type: {kind}\r\nContent-Length: {}\r\nCache-Control: no-store\r\nConnection: close\r\n\r\n",
        body.len()
    )?;
    if !head_only {
        stream.write_all(body)?;
    }
    stream.flush()
}
