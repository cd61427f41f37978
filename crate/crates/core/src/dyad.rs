//! Dyads: K-vectors of pairwise dissimilarities with sample-pair
//! provenance.

use serde::{Deserialize, Serialize};

use crate::data::DissimMatrix;
use crate::error::{usage, Result};

/// Where a dyad came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DyadPair {
    /// Unordered training pair with `i < j`.
    Train { i: u32, j: u32 },
    /// Connection between a test sample and training sample `train`.
    Test { train: u32 },
}

/// A single dyad: one nonnegative dissimilarity value per criterion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dyad {
    pub values: Vec<f64>,
    pub pair: DyadPair,
}

/// The full set of training dyads, one per unordered sample pair, stored
/// flat (dyad-major) for cache-friendly scans.
#[derive(Debug, Clone, PartialEq)]
pub struct DyadSet {
    values: Vec<f64>,
    pairs: Vec<(u32, u32)>,
    criteria: usize,
}

impl DyadSet {
    /// Builds one dyad per unordered pair (i < j, lexicographic order)
    /// from K aligned dissimilarity matrices: `dyad(i, j)[l] = m_l[i][j]`.
    pub fn build(matrices: &[DissimMatrix]) -> Result<Self> {
        if matrices.is_empty() {
            return Err(usage("at least one dissimilarity matrix is required"));
        }
        let n = matrices[0].n();
        if matrices.iter().any(|m| m.n() != n) {
            return Err(usage("all dissimilarity matrices must share the same n"));
        }
        if n < 2 {
            return Err(usage("dyad construction needs at least two samples"));
        }
        let k = matrices.len();
        let n_dyads = n * (n - 1) / 2;
        let mut values = Vec::with_capacity(n_dyads * k);
        let mut pairs = Vec::with_capacity(n_dyads);
        for i in 0..n {
            for j in (i + 1)..n {
                for m in matrices {
                    values.push(m.get(i, j));
                }
                pairs.push((i as u32, j as u32));
            }
        }
        Ok(Self { values, pairs, criteria: k })
    }

    /// Number of dyads.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Number of criteria K.
    pub fn criteria(&self) -> usize {
        self.criteria
    }

    /// The K values of dyad `idx`.
    pub fn values(&self, idx: usize) -> &[f64] {
        &self.values[idx * self.criteria..(idx + 1) * self.criteria]
    }

    /// The (i, j) training pair of dyad `idx`.
    pub fn pair(&self, idx: usize) -> (usize, usize) {
        let (i, j) = self.pairs[idx];
        (i as usize, j as usize)
    }

    /// Flat value buffer (dyad-major), for the sorting routines.
    pub fn flat_values(&self) -> &[f64] {
        &self.values
    }

    pub fn dyad(&self, idx: usize) -> Dyad {
        let (i, j) = self.pairs[idx];
        Dyad { values: self.values(idx).to_vec(), pair: DyadPair::Train { i, j } }
    }

    pub fn iter_values(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.criteria)
    }
}
