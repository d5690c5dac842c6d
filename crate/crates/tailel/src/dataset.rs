//! Single-column CSV ingestion for raw loss data.
//!
//! Format: one numeric value per line, `.` decimal separator, optional
//! header line, optional comment lines starting with `#`, blank lines
//! ignored. Non-numeric, non-finite, and nonpositive entries are rejected
//! with a count rather than failing the file.

use std::path::Path;

use crate::error::{Error, Result};
use crate::tailstats::Sample;

/// Parsed dataset: accepted values plus ingestion bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    /// Accepted values (finite, strictly positive) in file order.
    pub values: Vec<f64>,
    /// Number of accepted data lines; equals `values.len()`.
    pub parsed: usize,
    /// Data lines rejected as non-numeric, non-finite, or <= 0.
    pub rejected: usize,
    /// First line when it was non-numeric (treated as a column header).
    pub header: Option<String>,
}

impl Dataset {
    pub fn sample(&self) -> Result<Sample> {
        Sample::new(&self.values)
    }
}

/// Parse dataset text. Never panics on arbitrary input; errors only when
/// no value survives filtering.
pub fn parse_dataset(text: &str) -> Result<Dataset> {
    let mut values = Vec::new();
    let mut rejected = 0usize;
    let mut header = None;
    let mut first_data_line = true;

    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match line.parse::<f64>() {
            Ok(v) if v.is_finite() && v > 0.0 => values.push(v),
            Ok(_) => rejected += 1,
            Err(_) if first_data_line => header = Some(line.to_string()),
            Err(_) => rejected += 1,
        }
        first_data_line = false;
    }

    if values.is_empty() {
        return Err(Error::EmptySample);
    }
    Ok(Dataset {
        parsed: values.len(),
        values,
        rejected,
        header,
    })
}

/// Read and parse a dataset file.
pub fn read_dataset(path: &Path) -> Result<Dataset> {
    let text = std::fs::read_to_string(path)?;
    parse_dataset(&text)
}
