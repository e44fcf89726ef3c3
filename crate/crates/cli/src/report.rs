use serde::Serialize;
use serde_json::{json, Value};

use crate::{CliError, GlobalArgs};

pub fn tool_version() -> String {
    format!("epr-universe {}", epr_universe::VERSION)
}

/// Wraps `result` with the tool version, command, seed and config echo.
pub fn envelope(command: &str, global: &GlobalArgs, config: Value, result: Value) -> String {
    let inputs: Vec<String> = global.inputs.iter().map(|p| p.display().to_string()).collect();
    let mut full = json!({
        "inputs": inputs,
        "format": global.format.name(),
        "limit_enum": global.limit_enum,
        "limit_frucht": global.limit_frucht,
    });
    if let (Some(base), Value::Object(extra)) = (full.as_object_mut(), config) {
        base.extend(extra);
    }
    let doc = json!({
        "tool": tool_version(),
        "command": command,
        "seed": global.seed,
        "config": full,
        "result": result,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("json values always serialize");
    text.push('\n');
    text
}

pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types always serialize")
}

/// Header row then records, with `#`-prefixed provenance lines first.
pub fn csv_table(command: &str, global: &GlobalArgs, header: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let write_err = |e: csv::Error| CliError::Write {
        path: "<csv>".into(),
        message: e.to_string(),
    };
    w.write_record(header).map_err(write_err)?;
    for row in rows {
        w.write_record(row).map_err(write_err)?;
    }
    let body = w.into_inner().map_err(|e| CliError::Write {
        path: "<csv>".into(),
        message: e.to_string(),
    })?;
    let mut text = format!("# {} {command} seed={}\n", tool_version(), global.seed);
    text.push_str(&String::from_utf8(body).expect("csv of utf-8 fields"));
    Ok(text)
}
