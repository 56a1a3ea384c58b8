//! Deterministic CSV rendering: a metadata block of `# key = value`
//! lines, one header line, then data rows with floats serialized to 17
//! significant digits.  Identical tables render to identical bytes.

use std::io::Write;

#[derive(Clone, Copy, Debug)]
pub enum Cell {
    Int(i64),
    Num(f64),
}

pub struct Table {
    /// `(key, value)` pairs, written in the given order.
    pub meta: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn render(&self, out: &mut impl Write) -> std::io::Result<()> {
        for (key, value) in &self.meta {
            writeln!(out, "# {key} = {value}")?;
        }
        writeln!(out, "{}", self.columns.join(","))?;
        let mut line = String::new();
        for row in &self.rows {
            line.clear();
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    line.push(',');
                }
                match cell {
                    Cell::Int(v) => line.push_str(&v.to_string()),
                    Cell::Num(v) => line.push_str(&format!("{v:.16e}")),
                }
            }
            writeln!(out, "{line}")?;
        }
        Ok(())
    }
}
