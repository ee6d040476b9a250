//! CSV interchange helpers.
//!
//! Two formats live here:
//!
//! - experiment CSV: UTF-8, header row, floats printed with 9 significant
//!   digits via [`fmt_sig9`];
//! - matrix/vector exchange CSV: plain rows, no header, full-precision
//!   decimal (shortest round-trip representation).

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use std::path::Path;

/// Formats a float with exactly 9 significant digits (scientific form).
pub fn fmt_sig9(x: f64) -> String {
    debug_assert!(x.is_finite(), "refusing to format a non-finite value");
    if x == 0.0 {
        return "0.00000000e0".to_string();
    }
    format!("{x:.8e}")
}

/// FNV-1a 64-bit hash of a canonical configuration string; printed as 16
/// hex digits in every emitted CSV row so results stay traceable.
pub fn config_hash(canonical: &str) -> u64 {
    fnv1a(0xcbf2_9ce4_8422_2325, canonical.as_bytes())
}

pub(crate) fn fnv1a(seed: u64, bytes: &[u8]) -> u64 {
    let mut hash = seed;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01B3);
    }
    hash
}

/// Reads a headerless CSV of equal-length comma-separated rows.
pub fn read_matrix_csv(path: &Path) -> Result<DenseMatrix> {
    let text = std::fs::read_to_string(path)?;
    parse_matrix_csv(&text)
}

pub fn parse_matrix_csv(text: &str) -> Result<DenseMatrix> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for field in trimmed.split(',') {
            let value: f64 = field.trim().parse().map_err(|_| Error::Parse {
                line: line_no + 1,
                detail: format!("not a real number: {:?}", field.trim()),
            })?;
            row.push(value);
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::Parse {
                    line: line_no + 1,
                    detail: format!("expected {} fields, found {}", first.len(), row.len()),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 0,
            detail: "no rows".to_string(),
        });
    }
    DenseMatrix::from_rows(&rows)
}

/// Reads a vector: one value per line (column convention); a single
/// comma-separated row is also accepted.
pub fn read_vector_csv(path: &Path) -> Result<Vec<f64>> {
    let m = read_matrix_csv(path)?;
    if m.cols() == 1 {
        Ok(m.column(0))
    } else if m.rows() == 1 {
        Ok(m.row_slice(0).to_vec())
    } else {
        Err(Error::Parse {
            line: 0,
            detail: format!("expected a vector, found a {}x{} matrix", m.rows(), m.cols()),
        })
    }
}

/// Full-precision decimal CSV (shortest round-trip float formatting).
pub fn matrix_to_csv(m: &DenseMatrix) -> String {
    let mut out = String::new();
    for r in 0..m.rows() {
        let row: Vec<String> = m.row_slice(r).iter().map(|v| format!("{v}")).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn vector_to_csv(v: &[f64]) -> String {
    let mut out = String::new();
    for value in v {
        out.push_str(&format!("{value}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig9_formatting() {
        assert_eq!(fmt_sig9(1.0), "1.00000000e0");
        assert_eq!(fmt_sig9(0.5), "5.00000000e-1");
        assert_eq!(fmt_sig9(0.0), "0.00000000e0");
        assert_eq!(fmt_sig9(-0.0), "0.00000000e0");
        assert_eq!(fmt_sig9(-1234.56789), "-1.23456789e3");
    }

    #[test]
    fn matrix_csv_round_trip() {
        let m = DenseMatrix::from_rows(&[
            vec![1.0, -0.25, 3.141592653589793],
            vec![1e-300, 2.0, 0.1],
        ])
        .unwrap();
        let text = matrix_to_csv(&m);
        let back = parse_matrix_csv(&text).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn matrix_csv_rejects_ragged_rows() {
        let err = parse_matrix_csv("1,2\n3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn config_hash_is_stable() {
        assert_eq!(config_hash("a"), config_hash("a"));
        assert_ne!(config_hash("a"), config_hash("b"));
    }
}
