//! Output assembly: fixed-precision CSV tables and JSON documents.

use std::path::Path;

use serde_json::{json, Value};

use crate::error::CliError;

pub const VERSION: &str = concat!("normplane ", env!("CARGO_PKG_VERSION"));

/// 17 significant digits, enough to round-trip any `f64`.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Table {
        Table {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Vec<u8> {
        let mut w = csv::Writer::from_writer(Vec::new());
        // writing to memory cannot fail
        w.write_record(&self.header).unwrap();
        for r in &self.rows {
            w.write_record(r).unwrap();
        }
        w.into_inner().unwrap()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Detail {
    Csv(Table),
    Json(Value),
}

/// Everything a subcommand produces. Only `figure` depends on `--svg`.
#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub config: Value,
    pub summary: Value,
    pub detail: Detail,
    pub figure: Option<String>,
}

impl Output {
    pub fn summary_document(&self) -> String {
        let doc = json!({ "version": VERSION, "config": self.config, "summary": self.summary });
        serde_json::to_string_pretty(&doc).unwrap() + "\n"
    }

    pub fn detail_bytes(&self) -> Vec<u8> {
        match &self.detail {
            Detail::Csv(t) => t.to_csv(),
            Detail::Json(v) => {
                let doc = json!({ "version": VERSION, "config": self.config, "report": v });
                (serde_json::to_string_pretty(&doc).unwrap() + "\n").into_bytes()
            }
        }
    }
}

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn num_round_trips() {
        for x in [0.1, -1.0 / 3.0, 1e-300, 123456.789, 0.0] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(num(0.5), "5.0000000000000000e-1");
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(&["a", "b"]);
        t.push(vec!["1".into(), num(2.0)]);
        assert_eq!(String::from_utf8(t.to_csv()).unwrap(), "a,b\n1,2.0000000000000000e0\n");
    }
}
