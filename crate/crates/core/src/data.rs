//! Data containers: samples, datasets, and per-criterion dissimilarity
//! matrices, plus CSV ingestion.

use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};

/// A single data sample: a fixed-length vector of finite real features.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    features: Vec<f64>,
}

impl Sample {
    /// Builds a sample, rejecting NaN and infinite entries.
    pub fn new(features: Vec<f64>) -> Result<Self> {
        if features.iter().any(|v| !v.is_finite()) {
            return Err(usage("sample features must be finite"));
        }
        Ok(Self { features })
    }

    pub fn features(&self) -> &[f64] {
        &self.features
    }

    pub fn dim(&self) -> usize {
        self.features.len()
    }
}

/// A dataset of `n` samples with a uniform feature dimension, stored
/// row-major. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    n: usize,
    dim: usize,
    features: Vec<f64>,
}

/// CSV ingestion options. `has_header: None` sniffs the first row: if any
/// field fails to parse as a number the row is treated as a header.
#[derive(Debug, Clone, Copy)]
pub struct CsvOptions {
    pub delimiter: u8,
    pub has_header: Option<bool>,
}

impl Default for CsvOptions {
    fn default() -> Self {
        Self { delimiter: b',', has_header: None }
    }
}

impl Dataset {
    /// Builds a dataset from sample rows. All rows must share one
    /// dimension and contain only finite values.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(usage("dataset must contain at least one sample"));
        }
        let dim = rows[0].len();
        if dim == 0 {
            return Err(usage("samples must have at least one feature"));
        }
        let mut features = Vec::with_capacity(rows.len() * dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(usage(format!(
                    "sample {} has {} features, expected {}",
                    i,
                    row.len(),
                    dim
                )));
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(usage(format!("sample {i} contains a non-finite value")));
            }
            features.extend_from_slice(row);
        }
        Ok(Self { n: rows.len(), dim, features })
    }

    /// Reads a dataset from CSV: one sample per row, numeric columns.
    pub fn from_csv_path(path: impl AsRef<Path>, opts: CsvOptions) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::from_csv_reader(file, opts)
    }

    pub fn from_csv_reader(reader: impl Read, opts: CsvOptions) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .delimiter(opts.delimiter)
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut rows: Vec<Vec<f64>> = Vec::new();
        for (line, record) in rdr.records().enumerate() {
            let record = record?;
            if line == 0 && opts.has_header == Some(true) {
                continue;
            }
            let parsed: std::result::Result<Vec<f64>, _> =
                record.iter().map(str::parse::<f64>).collect();
            match parsed {
                Ok(row) => rows.push(row),
                // Sniff mode: a non-numeric first row is a header.
                Err(_) if line == 0 && opts.has_header.is_none() => continue,
                Err(e) => {
                    return Err(usage(format!("row {}: invalid number: {e}", line + 1)));
                }
            }
        }
        Dataset::from_rows(rows)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sample(&self, i: usize) -> &[f64] {
        &self.features[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.features.chunks_exact(self.dim)
    }
}

/// A symmetric, zero-diagonal, nonnegative dissimilarity matrix for one
/// criterion. Stored dense; the paper's experiments stay in the regime
/// where O(N^2) memory is cheap and row scans are cache-friendly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DissimMatrix {
    n: usize,
    criterion_id: String,
    entries: Vec<f64>,
}

impl DissimMatrix {
    /// Validates and wraps a dense row-major `n x n` matrix.
    pub fn from_entries(n: usize, criterion_id: impl Into<String>, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(usage(format!(
                "matrix entries length {} does not match n = {n}",
                entries.len()
            )));
        }
        let m = Self { n, criterion_id: criterion_id.into(), entries };
        m.validate()?;
        Ok(m)
    }

    /// Builds the matrix from a pairwise function evaluated on i < j;
    /// symmetry and the zero diagonal hold by construction.
    pub fn from_fn(
        n: usize,
        criterion_id: impl Into<String>,
        mut f: impl FnMut(usize, usize) -> f64,
    ) -> Result<Self> {
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = f(i, j);
                if !d.is_finite() || d < 0.0 {
                    return Err(usage(format!(
                        "dissimilarity for pair ({i}, {j}) is not a finite nonnegative value: {d}"
                    )));
                }
                entries[i * n + j] = d;
                entries[j * n + i] = d;
            }
        }
        Ok(Self { n, criterion_id: criterion_id.into(), entries })
    }

    /// For internal construction where symmetry, zero diagonal, and
    /// nonnegativity hold by the arithmetic that produced `entries`.
    pub(crate) fn from_entries_unchecked(
        n: usize,
        criterion_id: impl Into<String>,
        entries: Vec<f64>,
    ) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        Self { n, criterion_id: criterion_id.into(), entries }
    }

    pub(crate) fn entries(&self) -> &[f64] {
        &self.entries
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            if self.entries[i * n + i] != 0.0 {
                return Err(usage(format!("matrix diagonal entry ({i}, {i}) is not zero")));
            }
            for j in (i + 1)..n {
                let a = self.entries[i * n + j];
                let b = self.entries[j * n + i];
                if !a.is_finite() || a < 0.0 {
                    return Err(usage(format!(
                        "matrix entry ({i}, {j}) is not a finite nonnegative value: {a}"
                    )));
                }
                if a != b {
                    return Err(usage(format!("matrix is not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn criterion_id(&self) -> &str {
        &self.criterion_id
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_rejects_non_finite() {
        assert!(Sample::new(vec![0.0, f64::NAN]).is_err());
        assert!(Sample::new(vec![0.0, f64::INFINITY]).is_err());
        assert!(Sample::new(vec![0.0, 1.0]).is_ok());
    }

    #[test]
    fn dataset_requires_uniform_dim() {
        let err = Dataset::from_rows(vec![vec![1.0, 2.0], vec![3.0]]);
        assert!(err.is_err());
    }

    #[test]
    fn csv_sniffs_header() {
        let data = "x,y\n1,2\n3,4\n";
        let ds = Dataset::from_csv_reader(data.as_bytes(), CsvOptions::default()).unwrap();
        assert_eq!(ds.len(), 2);
        assert_eq!(ds.sample(1), &[3.0, 4.0]);

        let data = "1,2\n3,4\n";
        let ds = Dataset::from_csv_reader(data.as_bytes(), CsvOptions::default()).unwrap();
        assert_eq!(ds.len(), 2);
    }

    #[test]
    fn csv_custom_delimiter() {
        let data = "1;2\n3;4\n";
        let opts = CsvOptions { delimiter: b';', has_header: Some(false) };
        let ds = Dataset::from_csv_reader(data.as_bytes(), opts).unwrap();
        assert_eq!(ds.sample(0), &[1.0, 2.0]);
    }

    #[test]
    fn csv_rejects_bad_number_mid_file() {
        let data = "1,2\nfoo,4\n";
        assert!(Dataset::from_csv_reader(data.as_bytes(), CsvOptions::default()).is_err());
    }

    #[test]
    fn matrix_validation() {
        // asymmetric
        let err = DissimMatrix::from_entries(2, "c", vec![0.0, 1.0, 2.0, 0.0]);
        assert!(err.is_err());
        // nonzero diagonal
        let err = DissimMatrix::from_entries(2, "c", vec![1.0, 1.0, 1.0, 0.0]);
        assert!(err.is_err());
        // negative entry
        let err = DissimMatrix::from_entries(2, "c", vec![0.0, -1.0, -1.0, 0.0]);
        assert!(err.is_err());
        // NaN rejected at ingestion, not clamped
        let err = DissimMatrix::from_entries(2, "c", vec![0.0, f64::NAN, f64::NAN, 0.0]);
        assert!(err.is_err());
        let ok = DissimMatrix::from_entries(2, "c", vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        assert_eq!(ok.get(0, 1), 1.0);
    }
}
