//! Result records and their CSV / JSON encodings.

use std::collections::BTreeMap;
use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// One value in a record. Complex numbers are stored as `[re, im]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Bool(bool),
    Int(i64),
    Real(f64),
    Complex([f64; 2]),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<Complex64> for Cell {
    fn from(v: Complex64) -> Self {
        Cell::Complex([v.re, v.im])
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl Cell {
    fn csv_fields(&self) -> Vec<String> {
        match self {
            Cell::Bool(b) => vec![b.to_string()],
            Cell::Int(i) => vec![i.to_string()],
            Cell::Real(x) => vec![format_real(*x)],
            Cell::Complex([re, im]) => vec![format_real(*re), format_real(*im)],
            Cell::Text(s) => vec![s.clone()],
        }
    }

    fn is_complex(&self) -> bool {
        matches!(self, Cell::Complex(_))
    }
}

/// Shortest representation that parses back to the same value.
fn format_real(x: f64) -> String {
    format!("{x:?}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColumnKind {
    Real,
    Complex,
    Int,
    Bool,
    Text,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Column {
    pub name: String,
    pub kind: ColumnKind,
}

impl Column {
    pub fn new(name: &str, kind: ColumnKind) -> Self {
        Self { name: name.to_string(), kind }
    }

    fn headers(&self) -> Vec<String> {
        match self.kind {
            ColumnKind::Complex => vec![format!("{}_re", self.name), format!("{}_im", self.name)],
            _ => vec![self.name.clone()],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<Column>) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// A cross-check run alongside the main computation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub observed: f64,
    pub reference: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    /// Relative comparison `|observed − reference| ≤ tolerance·|reference|`.
    pub fn relative(name: &str, observed: f64, reference: f64, tolerance: f64) -> Self {
        let pass = (observed - reference).abs() <= tolerance * reference.abs();
        Self { name: name.to_string(), observed, reference, tolerance, pass }
    }

    /// Absolute comparison `|observed − reference| ≤ tolerance`.
    pub fn absolute(name: &str, observed: f64, reference: f64, tolerance: f64) -> Self {
        let pass = (observed - reference).abs() <= tolerance;
        Self { name: name.to_string(), observed, reference, tolerance, pass }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Record {
    pub command: String,
    /// Library operation that produced the outputs.
    pub operation: String,
    pub version: String,
    pub inputs: serde_json::Value,
    pub scalars: BTreeMap<String, Cell>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    #[serde(default)]
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

impl Record {
    pub fn new(command: &str, operation: &str, inputs: serde_json::Value) -> Self {
        Self {
            command: command.to_string(),
            operation: operation.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            inputs,
            scalars: BTreeMap::new(),
            table: None,
            checks: Vec::new(),
            seed: None,
            wall_time_s: None,
        }
    }

    pub fn scalar(&mut self, name: &str, value: impl Into<Cell>) {
        self.scalars.insert(name.to_string(), value.into());
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| CliError::Config(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    #[cfg(test)]
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("invalid record: {e}")))
    }

    /// The table if there is one, otherwise the scalars as a single row.
    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        match &self.table {
            Some(table) => {
                let header: Vec<String> = table.columns.iter().flat_map(Column::headers).collect();
                writer.write_record(&header)?;
                for row in &table.rows {
                    let fields: Vec<String> = row.iter().flat_map(Cell::csv_fields).collect();
                    writer.write_record(&fields)?;
                }
            }
            None => {
                let header: Vec<String> = self
                    .scalars
                    .iter()
                    .flat_map(|(name, cell)| {
                        if cell.is_complex() {
                            vec![format!("{name}_re"), format!("{name}_im")]
                        } else {
                            vec![name.clone()]
                        }
                    })
                    .collect();
                writer.write_record(&header)?;
                let fields: Vec<String> = self.scalars.values().flat_map(Cell::csv_fields).collect();
                writer.write_record(&fields)?;
            }
        }
        writer.flush()?;
        let bytes = writer.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Config(e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

pub fn render(record: &Record, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => record.to_json(),
        Format::Csv => record.to_csv(),
    }
}

/// Writes through a sibling temporary file so a failed run leaves no
/// partial output behind.
pub fn write_output(path: &std::path::Path, contents: &str) -> Result<(), CliError> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(std::path::Path::new("."));
    let tmp = dir.join(format!(
        ".{}.partial",
        path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default()
    ));
    let mut file = std::fs::File::create(&tmp)?;
    file.write_all(contents.as_bytes())?;
    file.sync_all()?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}
