//! Column-oriented numeric tables and their CSV/JSON renderings.

use std::io::Write;

use serde_json::{Map, Number, Value};

use crate::config::OutputFormat;
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    pub fn write(&self, format: OutputFormat, out: &mut dyn Write) -> Result<(), CliError> {
        match format {
            OutputFormat::Csv => self.write_csv(out),
            OutputFormat::Json => self.write_json(out),
        }
    }

    /// Fixed 15-significant-digit scientific notation, `\n` line endings.
    pub fn write_csv(&self, out: &mut dyn Write) -> Result<(), CliError> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|x| format_number(*x)))?;
        }
        w.flush()?;
        Ok(())
    }

    /// An array of objects keyed by column name, one per row.
    pub fn write_json(&self, out: &mut dyn Write) -> Result<(), CliError> {
        let records: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(k, &v)| (k.clone(), Number::from_f64(v).map_or(Value::Null, Value::Number)))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        serde_json::to_writer(&mut *out, &records)?;
        out.write_all(b"\n")?;
        Ok(())
    }
}

pub fn format_number(x: f64) -> String {
    format!("{x:.14e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(["t", "total"]);
        t.push(vec![0.0, 1.0]);
        t.push(vec![0.5, 0.123_456_789_012_345_67]);
        t
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        sample().write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "t,total\n0.00000000000000e0,1.00000000000000e0\n5.00000000000000e-1,1.23456789012346e-1\n"
        );
    }

    #[test]
    fn json_records() {
        let mut buf = Vec::new();
        sample().write_json(&mut buf).unwrap();
        let v: Value = serde_json::from_slice(&buf).unwrap();
        let rows = v.as_array().unwrap();
        assert_eq!(rows.len(), 2);
        let keys: Vec<&String> = rows[0].as_object().unwrap().keys().collect();
        assert_eq!(keys, ["t", "total"]);
        assert_eq!(rows[1]["total"].as_f64(), Some(0.123_456_789_012_345_67));
    }

    #[test]
    fn fifteen_significant_digits() {
        assert_eq!(format_number(-2.5e-300), "-2.50000000000000e-300");
        assert_eq!(format_number(std::f64::consts::PI), "3.14159265358979e0");
    }
}
