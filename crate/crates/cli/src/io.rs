//! JSON matrix files.
//!
//! ```json
//! {"rows": 2, "cols": 2,
//!  "standard": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [2.0, 0.0]]],
//!  "infinitesimal": [[[0.0, 0.0], [1.0, -1.0]], [[0.0, 0.0], [0.0, 0.0]]]}
//! ```
//!
//! Entries are `[re, im]` pairs in row-major nested arrays. Numbers are
//! written in shortest round-trip form, so a write followed by a read
//! reproduces every bit.

use std::fs;
use std::path::Path;

use dualmat::{ComplexMatrix, DualMatrix};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub type Rows = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub standard: Rows,
    pub infinitesimal: Rows,
}

pub fn complex_rows(m: &ComplexMatrix) -> Rows {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    let z = m.get(i, j);
                    [z.re, z.im]
                })
                .collect()
        })
        .collect()
}

fn to_complex(rows: usize, cols: usize, data: &Rows, part: &str) -> Result<ComplexMatrix, CliError> {
    if data.len() != rows {
        return Err(CliError::Invalid(format!(
            "{part}: {} rows, expected {rows}",
            data.len()
        )));
    }
    let mut flat = Vec::with_capacity(rows * cols);
    for (i, row) in data.iter().enumerate() {
        if row.len() != cols {
            return Err(CliError::Invalid(format!(
                "{part}: row {i} has {} entries, expected {cols}",
                row.len()
            )));
        }
        for (j, &[re, im]) in row.iter().enumerate() {
            if !re.is_finite() || !im.is_finite() {
                return Err(CliError::Invalid(format!("{part}: entry ({i}, {j}) is not finite")));
            }
            flat.push(Complex64::new(re, im));
        }
    }
    Ok(ComplexMatrix::from_vec(rows, cols, flat))
}

impl MatrixFile {
    pub fn from_dual(a: &DualMatrix) -> Self {
        MatrixFile {
            rows: a.rows(),
            cols: a.cols(),
            standard: complex_rows(a.standard()),
            infinitesimal: complex_rows(a.infinitesimal()),
        }
    }

    /// Checks the declared shape against both arrays and rejects
    /// non-finite entries.
    pub fn to_dual(&self) -> Result<DualMatrix, CliError> {
        let s = to_complex(self.rows, self.cols, &self.standard, "standard")?;
        let d = to_complex(self.rows, self.cols, &self.infinitesimal, "infinitesimal")?;
        Ok(DualMatrix::new(s, d)?)
    }
}

pub fn to_json(a: &DualMatrix) -> String {
    serde_json::to_string(&MatrixFile::from_dual(a)).expect("finite matrices always serialize")
}

pub fn from_json(text: &str) -> Result<DualMatrix, CliError> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    file.to_dual()
}

pub fn read_matrix(path: &Path) -> Result<DualMatrix, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    from_json(&text).map_err(|e| e.in_file(path))
}

pub fn write_matrix(path: &Path, a: &DualMatrix) -> Result<(), CliError> {
    fs::write(path, to_json(a) + "\n").map_err(|e| CliError::io(path, e))
}
