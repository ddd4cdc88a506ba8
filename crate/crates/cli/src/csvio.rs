//! CSV emission with full round-trip precision (17 significant digits).

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

/// Formats a float with 17 significant digits, enough to reparse bit-exact.
pub fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

pub struct CsvWriter {
    out: BufWriter<File>,
}

impl CsvWriter {
    pub fn create(path: &Path, header: &str) -> io::Result<CsvWriter> {
        let file = File::create(path)?;
        let mut out = BufWriter::new(file);
        writeln!(out, "{header}")?;
        Ok(CsvWriter { out })
    }

    /// Writes one row; `None` cells are left empty.
    pub fn row(&mut self, cells: &[Option<f64>]) -> io::Result<()> {
        let text: Vec<String> = cells
            .iter()
            .map(|c| c.map(fmt).unwrap_or_default())
            .collect();
        writeln!(self.out, "{}", text.join(","))
    }

    /// Writes one row of preformatted cells.
    pub fn raw_row(&mut self, cells: &[String]) -> io::Result<()> {
        writeln!(self.out, "{}", cells.join(","))
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.out.flush()
    }
}
