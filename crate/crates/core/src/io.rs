//! CSV output with round-trippable floats.

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

/// Shortest representation that parses back to the same `f64`, falling
/// back to 17 significant digits for values Rust prints in long form.
pub fn format_f64(v: f64) -> String {
    if v.is_finite() && v != 0.0 && (v.abs() < 1e-5 || v.abs() >= 1e16) {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

pub fn write_csv_to<W: Write>(mut w: W, header: &[&str], rows: &[Vec<f64>]) -> Result<()> {
    let io = |e: std::io::Error| Error::Io(e.to_string());
    writeln!(w, "{}", header.join(",")).map_err(io)?;
    for row in rows {
        let line: Vec<String> = row.iter().map(|v| format_f64(*v)).collect();
        writeln!(w, "{}", line.join(",")).map_err(io)?;
    }
    Ok(())
}

pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<f64>]) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    write_csv_to(std::io::BufWriter::new(file), header, rows)
}
