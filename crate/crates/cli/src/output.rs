use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::Result;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::args::Format;

/// Short SHA-256 of a configuration's canonical JSON form.
pub fn config_hash(config: &Value) -> String {
    let digest = Sha256::digest(config.to_string().as_bytes());
    hex::encode(&digest[..8])
}

/// Writes one record per experiment cell, as JSON lines or CSV.
pub struct Emitter {
    out: Box<dyn Write>,
    format: Format,
    config_hash: String,
    seed: u64,
    header: Option<Vec<String>>,
}

impl Emitter {
    pub fn new(path: Option<&Path>, format: Format, config_hash: String, seed: u64) -> Result<Emitter> {
        let out: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout())),
        };
        Ok(Emitter { out, format, config_hash, seed, header: None })
    }

    pub fn emit<T: Serialize>(&mut self, kind: &str, data: &T) -> Result<()> {
        let record = json!({
            "kind": kind,
            "config_hash": self.config_hash,
            "seed": self.seed,
            "data": serde_json::to_value(data)?,
        });
        match self.format {
            Format::Json => writeln!(self.out, "{record}")?,
            Format::Csv => self.write_csv(&record)?,
        }
        Ok(())
    }

    fn write_csv(&mut self, record: &Value) -> Result<()> {
        let mut cells = Vec::new();
        flatten("", record, &mut cells);
        let keys: Vec<String> = cells.iter().map(|(k, _)| k.clone()).collect();
        if self.header.as_ref() != Some(&keys) {
            writeln!(self.out, "{}", keys.iter().map(|k| csv_field(k)).collect::<Vec<_>>().join(","))?;
            self.header = Some(keys);
        }
        writeln!(self.out, "{}", cells.iter().map(|(_, v)| csv_field(v)).collect::<Vec<_>>().join(","))?;
        Ok(())
    }

    pub fn finish(mut self) -> Result<()> {
        self.out.flush()?;
        Ok(())
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flattening() {
        let mut cells = Vec::new();
        flatten("", &json!({"a": {"b": 1, "c": [1, 2]}, "d": "x,y", "e": null}), &mut cells);
        let keys: Vec<_> = cells.iter().map(|(k, _)| k.as_str()).collect();
        assert_eq!(keys, ["a.b", "a.c", "d", "e"]);
        assert_eq!(csv_field(&cells[1].1), "\"[1,2]\"");
        assert_eq!(csv_field("x,y"), "\"x,y\"");
    }

    #[test]
    fn hash_is_stable() {
        let a = config_hash(&json!({"q": [3], "seed": 1}));
        assert_eq!(a, config_hash(&json!({"seed": 1, "q": [3]})));
        assert_eq!(a.len(), 16);
    }
}
