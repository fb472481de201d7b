use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde_json::{json, Map, Value};

use crate::args::{Cli, Format};

pub const SCHEMA: &str = "qes-rabi/v1";

/// Everything a command produces, in all three renderings.
pub struct Document {
    pub command: &'static str,
    pub params: Value,
    pub results: Value,
    pub text: String,
    pub csv: String,
    /// Identifiers of failed checks; nonempty means exit code 2.
    pub failed: Vec<String>,
}

impl Document {
    pub fn new(command: &'static str, params: Value) -> Document {
        Document {
            command,
            params,
            results: Value::Null,
            text: String::new(),
            csv: String::new(),
            failed: Vec::new(),
        }
    }

    pub fn to_json(&self, meta: bool) -> Value {
        let mut obj = Map::new();
        obj.insert("schema".into(), SCHEMA.into());
        obj.insert("command".into(), self.command.into());
        obj.insert("params".into(), self.params.clone());
        obj.insert("results".into(), self.results.clone());
        if !self.failed.is_empty() {
            obj.insert("failed".into(), json!(self.failed));
        }
        if meta {
            let now = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            obj.insert(
                "meta".into(),
                json!({ "version": env!("CARGO_PKG_VERSION"), "generated_unix": now }),
            );
        }
        Value::Object(obj)
    }

    pub fn render(&self, cli: &Cli) -> Result<String> {
        Ok(match cli.format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json(!cli.no_meta))?;
                s.push('\n');
                s
            }
            Format::Csv => self.csv.clone(),
            Format::Text => self.text.clone(),
        })
    }
}

pub fn emit(doc: &Document, cli: &Cli) -> Result<()> {
    let body = doc.render(cli)?;
    match &cli.output {
        Some(path) => std::fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

/// 17 significant digits, so the value round-trips.
pub fn float(x: f64) -> String {
    qes_rabi::numerics::format_f64(x)
}

pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
