//! Table rendering in the three output formats.
//!
//! Text mode rounds the way the reference tables are quoted (integers below
//! 10^5, five significant digits above); CSV and JSON keep full precision.

use std::io::Write;

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Debug)]
pub enum Cell {
    Int(u128),
    Float(f64),
    Text(String),
}

impl Cell {
    pub fn big(v: &num_bigint::BigInt) -> Cell {
        use num_traits::ToPrimitive;
        match v.to_u128() {
            Some(small) => Cell::Int(small),
            None => Cell::Text(v.to_string()),
        }
    }

    fn text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => round_like_reference(*v),
            Cell::Text(s) => s.clone(),
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Float(v) => format!("{v}"),
            other => other.text(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Int(v) => match u64::try_from(*v) {
                Ok(small) => serde_json::Value::from(small),
                Err(_) => serde_json::Value::from(v.to_string()),
            },
            Cell::Float(v) => serde_json::Value::from(*v),
            Cell::Text(s) => serde_json::Value::from(s.as_str()),
        }
    }
}

/// Integers below 10^5, otherwise scientific with five significant digits.
pub fn round_like_reference(v: f64) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    if v.abs() < 99_999.5 {
        format!("{}", v.round() as i64)
    } else {
        format!("{v:.4e}")
    }
}

/// A titled table; the title states units and conventions for text mode.
pub struct Table {
    pub title: String,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn print(&self, format: Format) -> anyhow::Result<()> {
        match format {
            Format::Text => self.print_text(),
            Format::Csv => self.print_csv()?,
            Format::Json => self.print_json()?,
        }
        Ok(())
    }

    fn print_text(&self) {
        println!("{}", self.title);
        let rows: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::text).collect()).collect();
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.len()).collect();
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let line = |cells: Vec<String>| {
            let mut out = String::new();
            for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
                if i > 0 {
                    out.push_str("  ");
                }
                out.push_str(&format!("{cell:>w$}", w = w));
            }
            out
        };
        println!("{}", line(self.headers.iter().map(|h| h.to_string()).collect()));
        for row in rows {
            println!("{}", line(row));
        }
    }

    fn print_csv(&self) -> anyhow::Result<()> {
        let mut w = csv::Writer::from_writer(std::io::stdout().lock());
        w.write_record(&self.headers)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.flush()?;
        Ok(())
    }

    fn print_json(&self) -> anyhow::Result<()> {
        let objects: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                self.headers
                    .iter()
                    .zip(row)
                    .map(|(h, c)| (h.to_string(), c.json()))
                    .collect::<serde_json::Map<_, _>>()
                    .into()
            })
            .collect();
        let mut out = std::io::stdout().lock();
        serde_json::to_writer_pretty(&mut out, &objects)?;
        writeln!(out)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_rounding_switches_at_five_digits() {
        assert_eq!(round_like_reference(87.53), "88");
        assert_eq!(round_like_reference(31239.7), "31240");
        assert_eq!(round_like_reference(232010.3), "2.3201e5");
        assert_eq!(round_like_reference(4.96678e14), "4.9668e14");
    }
}
