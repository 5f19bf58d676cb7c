use std::fmt;
use std::io::Read;

use serde_json::Value;

use freeknot::{parse_gauss_code, ChordDiagram, DiagramError};

#[derive(Debug)]
pub enum InputError {
    Io { source: String, err: std::io::Error },
    Diagram(DiagramError),
    Json(String),
    NoCertificate,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Io { source, err } => write!(f, "cannot read {source}: {err}"),
            InputError::Diagram(e) => write!(f, "malformed Gauss code: {e}"),
            InputError::Json(e) => write!(f, "malformed JSON: {e}"),
            InputError::NoCertificate => f.write_str("input carries no certificate"),
        }
    }
}

fn read_stdin() -> Result<String, InputError> {
    let mut s = String::new();
    std::io::stdin()
        .read_to_string(&mut s)
        .map_err(|err| InputError::Io {
            source: "stdin".into(),
            err,
        })?;
    Ok(s)
}

fn read_file(path: &str) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|err| InputError::Io {
        source: path.into(),
        err,
    })
}

/// `-` or nothing reads stdin, `@path` reads a file, anything else is literal.
pub fn read_text(arg: Option<&str>) -> Result<String, InputError> {
    match arg {
        None | Some("-") => read_stdin(),
        Some(a) => match a.strip_prefix('@') {
            Some(path) => read_file(path),
            None => Ok(a.to_string()),
        },
    }
}

/// Reads a Gauss code. A JSON object with a `code` field, as printed by
/// `gen`, is accepted as well.
pub fn read_diagram(arg: Option<&str>) -> Result<ChordDiagram, InputError> {
    let text = read_text(arg)?;
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        if let Ok(Value::Object(obj)) = serde_json::from_str::<Value>(trimmed) {
            if let Some(Value::String(code)) = obj.get("code") {
                return parse_gauss_code(code).map_err(InputError::Diagram);
            }
        }
    }
    parse_gauss_code(&text).map_err(InputError::Diagram)
}

/// Reads a JSON document given literally, on stdin (`-`), or from a file.
pub fn read_document(arg: &str) -> Result<Value, InputError> {
    let trimmed = arg.trim_start();
    let text = if arg == "-" {
        read_stdin()?
    } else if trimmed.starts_with('[') || trimmed.starts_with('{') {
        arg.to_string()
    } else {
        read_file(arg.strip_prefix('@').unwrap_or(arg))?
    };
    serde_json::from_str(&text).map_err(|e| InputError::Json(e.to_string()))
}

/// A certificate block list, possibly wrapped in an object's `certificate` field.
pub fn read_certificate(arg: &str) -> Result<Value, InputError> {
    match read_document(arg)? {
        Value::Object(mut obj) => match obj.remove("certificate") {
            Some(Value::Null) | None => Err(InputError::NoCertificate),
            Some(v) => Ok(v),
        },
        v => Ok(v),
    }
}
