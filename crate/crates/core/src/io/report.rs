//! Run reports. Results hold no timing or host data, so identical inputs,
//! seed and flags give byte-identical output.

use std::io::Write;

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::error::Result;

pub const TOOL_VERSION: &str = concat!("qcog ", env!("CARGO_PKG_VERSION"));

/// Hex SHA-256 of the input bytes.
pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs_digest: String,
    /// Keys are kept sorted.
    pub results: Map<String, Value>,
    pub seed: u64,
    pub tool_version: String,
}

impl Report {
    pub fn new(command: &str, input: &[u8], seed: u64) -> Self {
        Self {
            command: command.to_string(),
            inputs_digest: digest(input),
            results: Map::new(),
            seed,
            tool_version: TOOL_VERSION.to_string(),
        }
    }

    pub fn insert(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.to_string(), value.into());
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// `key,value` rows with nested results flattened to dotted keys.
    pub fn to_csv(&self) -> Result<String> {
        let mut rows = vec![
            ("command".to_string(), self.command.clone()),
            ("inputs_digest".to_string(), self.inputs_digest.clone()),
            ("seed".to_string(), self.seed.to_string()),
            ("tool_version".to_string(), self.tool_version.clone()),
        ];
        for (k, v) in &self.results {
            flatten(&format!("results.{k}"), v, &mut rows);
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["key", "value"]).map_err(csv_error)?;
        for (k, v) in rows {
            w.write_record([k, v]).map_err(csv_error)?;
        }
        let bytes = w.into_inner().map_err(|e| crate::Error::Io(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&format!("{prefix}.{k}"), x, out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

pub(crate) fn csv_error(e: csv::Error) -> crate::Error {
    crate::Error::Io(e.to_string())
}

/// Rows of sweep or plot data with a header.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Sweep {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Sweep {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn write<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header).map_err(csv_error)?;
        for r in &self.rows {
            w.write_record(r).map_err(csv_error)?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn digest_is_sha256() {
        assert_eq!(
            digest(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn results_are_sorted_and_stable() {
        let mut a = Report::new("diagnose", b"x", 7);
        a.insert("z", 1.0);
        a.insert("a", json!({"k": [0.1, 0.2]}));
        let mut b = Report::new("diagnose", b"x", 7);
        b.insert("a", json!({"k": [0.1, 0.2]}));
        b.insert("z", 1.0);
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.to_json().find("\"a\"").unwrap() < a.to_json().find("\"z\"").unwrap());
    }

    #[test]
    fn csv_flattens() {
        let mut r = Report::new("chsh", b"", 1);
        r.insert("e", json!([[1.0, 0.5]]));
        let csv = r.to_csv().unwrap();
        assert!(csv.contains("results.e.0.1,0.5"), "{csv}");
    }
}
