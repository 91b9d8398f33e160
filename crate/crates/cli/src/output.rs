//! Rendering rows as an aligned table, CSV or JSON.

use std::io::Write;

use clap::ValueEnum;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LogBase {
    #[value(name = "e")]
    E,
    #[value(name = "2")]
    Two,
}

impl LogBase {
    /// Convert an entropy from nats.
    pub fn convert(self, nats: f64) -> f64 {
        match self {
            LogBase::E => nats,
            LogBase::Two => nats / std::f64::consts::LN_2,
        }
    }

    pub fn unit(self) -> &'static str {
        match self {
            LogBase::E => "nats",
            LogBase::Two => "bits",
        }
    }
}

/// A titled list of rows with named columns.
pub struct Table {
    pub title: Option<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            title: None,
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn with_title(mut self, t: impl Into<String>) -> Self {
        self.title = Some(t.into());
        self
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render_text(&self) -> String {
        let width = |s: &str| s.chars().count();
        let mut w: Vec<usize> = self.columns.iter().map(|c| width(c)).collect();
        for r in &self.rows {
            for (i, c) in r.iter().enumerate() {
                w[i] = w[i].max(width(c));
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&w)
                .map(|(c, &n)| format!("{c}{}", " ".repeat(n - width(c))))
                .collect();
            padded.join("  ").trim_end().to_string()
        };
        let mut out = String::new();
        if let Some(t) = &self.title {
            out.push_str(t);
            out.push('\n');
        }
        out.push_str(&line(&self.columns));
        out.push('\n');
        let rule: Vec<String> = w.iter().map(|&n| "-".repeat(n)).collect();
        out.push_str(&rule.join("  "));
        out.push('\n');
        for r in &self.rows {
            out.push_str(&line(r));
            out.push('\n');
        }
        out
    }

    pub fn render_csv(&self) -> String {
        let mut wtr = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["schema".to_string()];
        header.extend(self.columns.iter().cloned());
        wtr.write_record(&header).expect("in-memory write");
        for r in &self.rows {
            let mut rec = vec![premod::catalog::SCHEMA.to_string()];
            rec.extend(r.iter().cloned());
            wtr.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(wtr.into_inner().expect("in-memory flush")).expect("utf-8")
    }
}

/// Emit a result. JSON uses `body` (wrapped with the schema version); the other formats print
/// the tables.
pub fn emit(format: Format, tables: &[Table], body: Value) {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let text = match format {
        Format::Json => {
            let mut v = json!({ "schema": premod::catalog::SCHEMA });
            if let (Value::Object(m), Value::Object(b)) = (&mut v, body) {
                m.extend(b);
            }
            let mut s = serde_json::to_string_pretty(&v).expect("serializable");
            s.push('\n');
            s
        }
        Format::Table => tables.iter().map(Table::render_text).collect::<Vec<_>>().join("\n"),
        Format::Csv => tables.iter().map(Table::render_csv).collect::<Vec<_>>().join("\n"),
    };
    // a closed pipe is not an error worth reporting
    let _ = out.write_all(text.as_bytes());
}

pub fn fmt_num(x: f64) -> String {
    format!("{x:.6}")
}

pub fn fmt_res(x: f64) -> String {
    format!("{x:.2e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_alignment() {
        let mut t = Table::new(&["a", "long"]);
        t.push(vec!["xyz".into(), "1".into()]);
        assert_eq!(t.render_text(), "a    long\n---  ----\nxyz  1\n");
    }

    #[test]
    fn csv_has_schema_column() {
        let mut t = Table::new(&["name", "v"]);
        t.push(vec!["a,b".into(), "1".into()]);
        assert_eq!(t.render_csv(), "schema,name,v\n1,\"a,b\",1\n");
    }

    #[test]
    fn bits() {
        assert!((LogBase::Two.convert(std::f64::consts::LN_2) - 1.0).abs() < 1e-15);
        assert_eq!(LogBase::E.convert(0.5), 0.5);
    }
}
