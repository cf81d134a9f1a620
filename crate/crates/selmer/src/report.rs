//! Report assembly and emission.
//!
//! JSON objects use `serde_json`'s default ordered map, so keys come out
//! sorted and identical inputs give identical bytes apart from `runtime_ms`.

use std::io::Write;
use std::path::Path;

use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::config::{ExperimentConfig, Format};
use crate::error::CliError;

/// `"num/den"`, always with an explicit denominator.
pub fn rat(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn version() -> &'static str {
    concat!(env!("CARGO_PKG_VERSION"), "+", env!("SELMER_GIT_HASH"))
}

/// A flat CSV table: header plus rows.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub body: Map<String, Value>,
    pub table: Option<Table>,
}

impl Report {
    pub fn new(body: Value) -> Self {
        match body {
            Value::Object(body) => Report { body, table: None },
            _ => panic!("report body must be an object"),
        }
    }

    pub fn with_table(mut self, t: Table) -> Self {
        self.table = Some(t);
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.body.get(key)
    }

    /// Adds `config`, `seed`, `version` and `runtime_ms`.
    pub fn finish(mut self, cfg: &ExperimentConfig, runtime_ms: u128) -> Self {
        self.body.insert("config".into(), cfg.to_json());
        self.body.insert("seed".into(), json!(cfg.seed));
        self.body.insert("version".into(), json!(version()));
        self.body.insert("runtime_ms".into(), json!(runtime_ms as u64));
        self
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&Value::Object(self.body.clone())).expect("json serializes");
        s.push('\n');
        s
    }

    /// The attached table, or the scalar fields as a single row.
    pub fn to_csv_string(&self) -> Result<String, CliError> {
        let table = self.table.clone().unwrap_or_else(|| {
            let mut t = Table::default();
            let mut row = Vec::new();
            for (k, v) in &self.body {
                let cell = match v {
                    Value::String(s) => s.clone(),
                    Value::Number(n) => n.to_string(),
                    Value::Bool(b) => b.to_string(),
                    Value::Null => String::new(),
                    _ => continue,
                };
                t.header.push(k.clone());
                row.push(cell);
            }
            t.rows.push(row);
            t
        });
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&table.header).map_err(|e| CliError::Internal(e.to_string()))?;
        for r in &table.rows {
            w.write_record(r).map_err(|e| CliError::Internal(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Internal(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => Ok(self.to_json_string()),
            Format::Csv => self.to_csv_string(),
        }
    }

    /// Writes to `out`, or to stdout when absent.
    pub fn emit(&self, format: Format, out: Option<&Path>) -> Result<(), CliError> {
        let text = self.render(format)?;
        match out {
            Some(p) => std::fs::write(p, text)?,
            None => std::io::stdout().lock().write_all(text.as_bytes())?,
        }
        Ok(())
    }
}
