//! CSV emission helpers.
//!
//! All numeric CSV output uses '.' as the decimal separator, no thousands
//! grouping, and 12 significant digits, so regression diffs are
//! byte-stable across runs and platforms.

use crate::error::Result;

/// Formats a float with 12 significant digits in scientific notation.
pub(crate) fn csv_field(v: f64) -> String {
    format!("{v:.11e}")
}

/// Writes one comma-joined row.
pub(crate) fn write_csv_row<W: std::io::Write>(out: &mut W, fields: &[String]) -> Result<()> {
    writeln!(out, "{}", fields.join(","))?;
    Ok(())
}
