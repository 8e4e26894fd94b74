use std::io::{self, Write};

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Tsv,
    Markdown,
}

/// A header plus rows of preformatted cells.
#[derive(Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<I, S>(header: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Table { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.header)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                w.flush()
            }
            Format::Tsv => {
                writeln!(out, "{}", self.header.join("\t"))?;
                for row in &self.rows {
                    writeln!(out, "{}", row.join("\t"))?;
                }
                Ok(())
            }
            Format::Markdown => {
                writeln!(out, "| {} |", self.header.join(" | "))?;
                writeln!(out, "|{}", "---|".repeat(self.header.len()))?;
                for row in &self.rows {
                    writeln!(out, "| {} |", row.join(" | "))?;
                }
                Ok(())
            }
        }
    }
}

/// Shortest representation that round-trips.
pub fn real(v: f64) -> String {
    format!("{v}")
}

/// Fixed decimals, with exact zeros printed as `0`.
pub fn fixed(v: f64, decimals: usize) -> String {
    if v == 0.0 {
        "0".to_string()
    } else {
        format!("{v:.decimals$}")
    }
}
