//! Column tables written as CSV with a JSON sidecar.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::CliResult;

/// One CSV cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// Free text.
    Text(String),
    /// Float, written as `{:.16e}` (17 significant digits).
    Num(f64),
    /// Integer.
    Int(i64),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Num(x) => format!("{x:.16e}"),
            Cell::Int(i) => i.to_string(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Text(b.to_string())
    }
}

/// Header plus rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    /// Column names.
    pub columns: Vec<String>,
    /// Rows, each as long as `columns`.
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    /// Empty table with the given header.
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    /// Append a row.
    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Numeric values of a column (non-numeric cells are skipped).
    pub fn numbers(&self, column: &str) -> Vec<f64> {
        let Some(i) = self.columns.iter().position(|c| c == column) else {
            return Vec::new();
        };
        self.rows
            .iter()
            .filter_map(|r| match r[i] {
                Cell::Num(x) => Some(x),
                Cell::Int(k) => Some(k as f64),
                Cell::Text(_) => None,
            })
            .collect()
    }

    /// Rows whose text cell in `column` equals `value`.
    pub fn filter(&self, column: &str, value: &str) -> Table {
        let i = self.columns.iter().position(|c| c == column);
        Table {
            columns: self.columns.clone(),
            rows: self
                .rows
                .iter()
                .filter(|r| i.is_some_and(|i| r[i] == Cell::Text(value.to_string())))
                .cloned()
                .collect(),
        }
    }

    /// Write as CSV.
    pub fn write_csv<W: Write>(&self, out: W) -> CliResult<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        w.flush()?;
        Ok(())
    }

    /// Write `<stem>.csv` and `<stem>.json` into `dir`; returns both paths.
    pub fn write_with_sidecar<S: Serialize>(
        &self,
        dir: &Path,
        stem: &str,
        sidecar: &S,
    ) -> CliResult<(PathBuf, PathBuf)> {
        std::fs::create_dir_all(dir)?;
        let csv_path = dir.join(format!("{stem}.csv"));
        let json_path = dir.join(format!("{stem}.json"));
        self.write_csv(BufWriter::new(File::create(&csv_path)?))?;
        let mut j = BufWriter::new(File::create(&json_path)?);
        serde_json::to_writer_pretty(&mut j, sidecar).map_err(std::io::Error::from)?;
        writeln!(j)?;
        j.flush()?;
        Ok((csv_path, json_path))
    }
}
