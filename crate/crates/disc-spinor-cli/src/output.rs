//! Report assembly and serialization shared by every subcommand.
//!
//! A command computes everything first, builds a [`Report`], and only then
//! touches the output target. Rendering never consults clocks, environment,
//! or hash-map iteration order, so a fixed configuration yields byte-identical
//! bytes on every run.

use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::{CliError, CliResult, Format};

/// One table entry. `Empty` renders as an empty CSV field and JSON null.
#[derive(Clone, Debug)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn csv_field(&self) -> String {
        match self {
            Cell::Float(v) => format!("{v}"),
            Cell::Int(v) => format!("{v}"),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => format!("{b}"),
            Cell::Empty => String::new(),
        }
    }

    fn json_value(&self) -> Value {
        match self {
            Cell::Float(v) => json!(v),
            Cell::Int(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Empty => Value::Null,
        }
    }
}

/// A finished command result: configuration echo, free-form metadata,
/// structured JSON extras, and the row table.
pub struct Report {
    command: &'static str,
    config: Vec<(&'static str, String)>,
    info: Vec<(String, String)>,
    extras: Vec<(&'static str, Value)>,
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn new(command: &'static str, columns: Vec<&'static str>) -> Self {
        Report {
            command,
            config: Vec::new(),
            info: Vec::new(),
            extras: Vec::new(),
            columns,
            rows: Vec::new(),
        }
    }

    /// Echo one configuration setting (a flag value the user chose).
    pub fn config(&mut self, key: &'static str, value: impl ToString) {
        self.config.push((key, value.to_string()));
    }

    /// Record one computed metadata line (mass, a coefficient, a note).
    pub fn info(&mut self, key: impl Into<String>, value: impl ToString) {
        self.info.push((key.into(), value.to_string()));
    }

    /// Attach a structured value emitted only in JSON output.
    pub fn extra(&mut self, key: &'static str, value: Value) {
        self.extras.push((key, value));
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn render_csv(&self) -> Vec<u8> {
        let mut buf = Vec::new();
        let version = env!("CARGO_PKG_VERSION");
        let _ = writeln!(buf, "# disc-spinor {version}");
        let _ = writeln!(buf, "# command: {}", self.command);
        for (key, value) in &self.config {
            let _ = writeln!(buf, "# {key}: {value}");
        }
        for (key, value) in &self.info {
            let _ = writeln!(buf, "# {key}: {value}");
        }
        let mut writer = csv::Writer::from_writer(buf);
        // The writer only fails on I/O, and a Vec<u8> sink cannot.
        writer
            .write_record(&self.columns)
            .expect("csv write to memory");
        for row in &self.rows {
            writer
                .write_record(row.iter().map(|c| c.csv_field()))
                .expect("csv write to memory");
        }
        writer.into_inner().expect("csv flush to memory")
    }

    fn render_json(&self) -> Vec<u8> {
        let mut meta = Map::new();
        meta.insert("tool".into(), json!("disc-spinor"));
        meta.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        meta.insert("command".into(), json!(self.command));
        let mut config = Map::new();
        for (key, value) in &self.config {
            config.insert((*key).into(), json!(value));
        }
        meta.insert("config".into(), Value::Object(config));
        if !self.info.is_empty() {
            let mut info = Map::new();
            for (key, value) in &self.info {
                info.insert(key.clone(), json!(value));
            }
            meta.insert("info".into(), Value::Object(info));
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    obj.insert((*name).into(), cell.json_value());
                }
                Value::Object(obj)
            })
            .collect();
        let mut root = Map::new();
        root.insert("meta".into(), Value::Object(meta));
        for (key, value) in &self.extras {
            root.insert((*key).into(), value.clone());
        }
        root.insert("columns".into(), json!(self.columns));
        root.insert("rows".into(), Value::Array(rows));
        let mut buf = serde_json::to_vec_pretty(&Value::Object(root))
            .expect("json render to memory");
        buf.push(b'\n');
        buf
    }

    pub fn render(&self, format: Format) -> Vec<u8> {
        match format {
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        }
    }
}

/// Render and deliver a finished report. Called only after all computation
/// and validation succeeded, so a failed run never leaves partial output.
pub fn emit(report: &Report, format: Format, out: Option<&Path>) -> CliResult<()> {
    let bytes = report.render(format);
    match out {
        Some(path) => std::fs::write(path, &bytes)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(&bytes)
            .map_err(|e| CliError::Failure(format!("cannot write to stdout: {e}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_render_quotes_and_orders_fields() {
        let mut r = Report::new("demo", vec!["name", "value", "flag"]);
        r.config("alpha", 1.5);
        r.info("note", "skipped two rows");
        r.push_row(vec![
            Cell::Text("with,comma".into()),
            Cell::Float(0.5),
            Cell::Bool(true),
        ]);
        r.push_row(vec![Cell::Empty, Cell::Int(-3), Cell::Bool(false)]);
        let text = String::from_utf8(r.render(Format::Csv)).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], format!("# disc-spinor {}", env!("CARGO_PKG_VERSION")));
        assert_eq!(lines[1], "# command: demo");
        assert_eq!(lines[2], "# alpha: 1.5");
        assert_eq!(lines[3], "# note: skipped two rows");
        assert_eq!(lines[4], "name,value,flag");
        assert_eq!(lines[5], "\"with,comma\",0.5,true");
        assert_eq!(lines[6], ",-3,false");
    }

    #[test]
    fn json_render_carries_meta_and_typed_rows() {
        let mut r = Report::new("demo", vec!["x", "y"]);
        r.config("grid", "7");
        r.extra("payload", json!({ "k": 2 }));
        r.push_row(vec![Cell::Float(0.25), Cell::Empty]);
        let value: Value = serde_json::from_slice(&r.render(Format::Json)).unwrap();
        assert_eq!(value["meta"]["tool"], "disc-spinor");
        assert_eq!(value["meta"]["command"], "demo");
        assert_eq!(value["meta"]["config"]["grid"], "7");
        assert_eq!(value["payload"]["k"], 2);
        assert_eq!(value["columns"], json!(["x", "y"]));
        assert_eq!(value["rows"][0]["x"], 0.25);
        assert!(value["rows"][0]["y"].is_null());
    }

    #[test]
    fn float_cells_round_trip_through_csv_text() {
        let v = 0.058_823_529_411_764_705_f64;
        let cell = Cell::Float(v);
        assert_eq!(cell.csv_field().parse::<f64>().unwrap(), v);
    }
}
