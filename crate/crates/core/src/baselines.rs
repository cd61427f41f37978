//! Single-criterion nearest-neighbor baselines run on scalarized
//! dissimilarities, for head-to-head comparison with the Pareto-depth
//! detector: k-NN distance, k-NN distance sum, local outlier factor, and
//! an empirical p-value score. All four consume a weighted combination of
//! the per-criterion matrices and score higher for more anomalous input.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::data::DissimMatrix;
use crate::error::{usage, Result};
use crate::knn::select_k;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaselineMethod {
    /// Distance to the k-th nearest training sample.
    KnnDist,
    /// Sum of the k nearest distances.
    KnnSum,
    /// Local outlier factor with the same k.
    Lof,
    /// Resubstitution rank proxy: the fraction of training samples whose
    /// own k-NN distance is at most the test sample's.
    Klpe,
}

pub const ALL_METHODS: [BaselineMethod; 4] = [
    BaselineMethod::KnnDist,
    BaselineMethod::KnnSum,
    BaselineMethod::Lof,
    BaselineMethod::Klpe,
];

impl fmt::Display for BaselineMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Self::KnnDist => "knn_dist",
            Self::KnnSum => "knn_sum",
            Self::Lof => "lof",
            Self::Klpe => "klpe",
        };
        f.write_str(name)
    }
}

impl FromStr for BaselineMethod {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "knn_dist" | "knn" => Ok(Self::KnnDist),
            "knn_sum" => Ok(Self::KnnSum),
            "lof" => Ok(Self::Lof),
            "klpe" => Ok(Self::Klpe),
            other => Err(usage(format!("unknown baseline method {other:?}"))),
        }
    }
}

/// The full weight grid: every combination of `points_per_axis` equally
/// spaced values in [0, 1] per criterion, with the all-zero combination
/// removed (it scalarizes every dissimilarity to zero and leaves neighbor
/// order undefined).
pub fn grid_weights(criteria: usize, points_per_axis: usize) -> Vec<Vec<f64>> {
    assert!(criteria >= 1, "grid needs at least one criterion");
    assert!(points_per_axis >= 2, "grid needs at least two points per axis");
    let steps: Vec<f64> = (0..points_per_axis)
        .map(|i| i as f64 / (points_per_axis - 1) as f64)
        .collect();
    let total = points_per_axis.pow(criteria as u32);
    let mut out = Vec::with_capacity(total - 1);
    for mut code in 0..total {
        let mut w = vec![0.0; criteria];
        // Last axis varies fastest.
        for slot in w.iter_mut().rev() {
            *slot = steps[code % points_per_axis];
            code /= points_per_axis;
        }
        if w.iter().any(|&v| v != 0.0) {
            out.push(w);
        }
    }
    out
}

/// Weighted sum of per-criterion matrices.
pub fn scalarize(matrices: &[DissimMatrix], weights: &[f64]) -> Result<DissimMatrix> {
    if matrices.is_empty() || matrices.len() != weights.len() {
        return Err(usage("one weight per matrix is required"));
    }
    if weights.iter().any(|&w| !w.is_finite() || w < 0.0) {
        return Err(usage("weights must be finite and nonnegative"));
    }
    if weights.iter().all(|&w| w == 0.0) {
        return Err(usage("weights must not all be zero"));
    }
    let n = matrices[0].n();
    if matrices.iter().any(|m| m.n() != n) {
        return Err(usage("matrices must share the same n"));
    }
    // Accumulate criterion-major; symmetry and the zero diagonal carry
    // over entry-wise from the inputs.
    let mut out = vec![0.0f64; n * n];
    for (m, &w) in matrices.iter().zip(weights) {
        if w == 0.0 {
            continue;
        }
        for (o, &v) in out.iter_mut().zip(m.entries()) {
            *o += w * v;
        }
    }
    Ok(DissimMatrix::from_entries_unchecked(n, "scalarized", out))
}

/// Scalarizes per-criterion test-to-training dissimilarity rows.
pub fn scalarize_rows(rows: &[Vec<f64>], weights: &[f64]) -> Vec<f64> {
    let n = rows[0].len();
    (0..n)
        .map(|j| rows.iter().zip(weights).map(|(r, w)| w * r[j]).sum())
        .collect()
}

/// Precomputed training-side state for all four baselines on one
/// scalarized matrix: neighbor orderings, the chosen k, per-sample k-NN
/// distances, and local reachability densities.
pub struct BaselineScorer {
    k: usize,
    n: usize,
    /// k-NN distance of each training sample (resubstitution).
    kdist: Vec<f64>,
    /// The same distances sorted ascending, for rank queries.
    kdist_sorted: Vec<f64>,
    /// Local reachability density of each training sample.
    lrd: Vec<f64>,
}

/// k-th smallest value of `row` excluding index `skip`.
fn kth_smallest_excluding(row: &[f64], skip: usize, k: usize, scratch: &mut Vec<f64>) -> f64 {
    scratch.clear();
    scratch.extend(row.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &d)| d));
    *scratch
        .select_nth_unstable_by(k - 1, |a, b| a.partial_cmp(b).unwrap())
        .1
}

impl BaselineScorer {
    /// Fits on a scalarized matrix. With `k: None` the connectivity
    /// heuristic picks k, mirroring the detector's parameter choice.
    pub fn fit(matrix: &DissimMatrix, k: Option<usize>) -> Result<Self> {
        let n = matrix.n();
        if n < 2 {
            return Err(usage("baseline fitting requires at least two samples"));
        }
        let k = match k {
            Some(k) => {
                if k == 0 || k >= n {
                    return Err(usage("baseline k must satisfy 1 <= k < N"));
                }
                k
            }
            None => select_k(matrix)?,
        };

        let mut scratch = Vec::with_capacity(n - 1);
        let kdist: Vec<f64> =
            (0..n).map(|i| kth_smallest_excluding(matrix.row(i), i, k, &mut scratch)).collect();

        // Neighborhoods include every sample at distance <= the k-NN
        // distance, so boundary ties are kept.
        let lrd: Vec<f64> = (0..n)
            .map(|i| {
                let row = matrix.row(i);
                let mut total = 0.0;
                let mut count = 0usize;
                for (j, &d) in row.iter().enumerate() {
                    if j != i && d <= kdist[i] {
                        total += d.max(kdist[j]);
                        count += 1;
                    }
                }
                if total == 0.0 {
                    f64::INFINITY
                } else {
                    count as f64 / total
                }
            })
            .collect();

        let mut kdist_sorted = kdist.clone();
        kdist_sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(Self { k, n, kdist, kdist_sorted, lrd })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Scores one test sample from its scalarized distances to all
    /// training samples.
    pub fn score(&self, method: BaselineMethod, x_dists: &[f64]) -> Result<f64> {
        if x_dists.len() != self.n {
            return Err(usage("one distance per training sample is required"));
        }
        let mut scratch = x_dists.to_vec();
        let kdist_x =
            *scratch.select_nth_unstable_by(self.k - 1, |a, b| a.partial_cmp(b).unwrap()).1;
        Ok(match method {
            BaselineMethod::KnnDist => kdist_x,
            BaselineMethod::KnnSum => {
                // Values strictly below the k-th distance, plus enough
                // copies of it to reach k (ties at the boundary all carry
                // the same value).
                let mut sum = 0.0;
                let mut below = 0usize;
                for &d in x_dists {
                    if d < kdist_x {
                        sum += d;
                        below += 1;
                    }
                }
                sum + (self.k - below) as f64 * kdist_x
            }
            BaselineMethod::Klpe => {
                let below = self.kdist_sorted.partition_point(|&g| g <= kdist_x);
                below as f64 / self.n as f64
            }
            BaselineMethod::Lof => {
                let mut reach_total = 0.0;
                let mut count = 0usize;
                let mut lrd_sum = 0.0;
                for (j, &d) in x_dists.iter().enumerate() {
                    if d <= kdist_x {
                        reach_total += d.max(self.kdist[j]);
                        count += 1;
                        lrd_sum += self.lrd[j];
                    }
                }
                let lrd_x =
                    if reach_total == 0.0 { f64::INFINITY } else { count as f64 / reach_total };
                let mean_lrd = lrd_sum / count as f64;
                if lrd_x.is_infinite() {
                    // Coincides with a duplicate-heavy cluster: as dense
                    // as its neighborhood.
                    if mean_lrd.is_infinite() {
                        1.0
                    } else {
                        0.0
                    }
                } else {
                    mean_lrd / lrd_x
                }
            }
        })
    }
}

/// One-shot scores; the grid-search harness should fit a
/// [`BaselineScorer`] once per weight vector instead.
pub fn knn_dist_score(matrix: &DissimMatrix, x_dists: &[f64], k: usize) -> Result<f64> {
    BaselineScorer::fit(matrix, Some(k))?.score(BaselineMethod::KnnDist, x_dists)
}

pub fn knn_sum_score(matrix: &DissimMatrix, x_dists: &[f64], k: usize) -> Result<f64> {
    BaselineScorer::fit(matrix, Some(k))?.score(BaselineMethod::KnnSum, x_dists)
}

pub fn lof_score(matrix: &DissimMatrix, x_dists: &[f64], k: usize) -> Result<f64> {
    BaselineScorer::fit(matrix, Some(k))?.score(BaselineMethod::Lof, x_dists)
}

pub fn klpe_score(matrix: &DissimMatrix, x_dists: &[f64], k: usize) -> Result<f64> {
    BaselineScorer::fit(matrix, Some(k))?.score(BaselineMethod::Klpe, x_dists)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix_1d(points: &[f64]) -> DissimMatrix {
        DissimMatrix::from_fn(points.len(), "abs", |i, j| (points[i] - points[j]).abs())
            .unwrap()
    }

    fn dists_1d(points: &[f64], x: f64) -> Vec<f64> {
        points.iter().map(|p| (p - x).abs()).collect()
    }

    #[test]
    fn grid_counts() {
        assert_eq!(grid_weights(1, 2), vec![vec![1.0]]);
        assert_eq!(grid_weights(4, 6).len(), 1295);
        assert_eq!(grid_weights(2, 101).len(), 101 * 101 - 1);
    }

    #[test]
    fn grid_is_deterministic_and_zero_free() {
        let g = grid_weights(3, 3);
        assert_eq!(g.len(), 26);
        assert_eq!(g[0], vec![0.0, 0.0, 0.5]);
        assert!(g.iter().all(|w| w.iter().any(|&v| v != 0.0)));
    }

    #[test]
    fn knn_scores_hand_values() {
        let pts = [0.0, 1.0, 2.0];
        let m = matrix_1d(&pts);
        // Coincident test point.
        assert_eq!(knn_dist_score(&m, &dists_1d(&pts, 0.0), 1).unwrap(), 0.0);
        // Train {0,1,2}, x=10, k=2: nearest two are 2 and 1 -> 8 + 9.
        assert_eq!(knn_sum_score(&m, &dists_1d(&pts, 10.0), 2).unwrap(), 17.0);
    }

    #[test]
    fn k_must_be_less_than_n() {
        let m = matrix_1d(&[0.0, 1.0, 2.0]);
        assert!(knn_dist_score(&m, &[0.0, 1.0, 2.0], 3).is_err());
        assert!(knn_dist_score(&m, &[0.0, 1.0, 2.0], 0).is_err());
    }

    #[test]
    fn klpe_is_a_fraction() {
        let pts: Vec<f64> = (0..20).map(|i| i as f64).collect();
        let m = matrix_1d(&pts);
        let inside = klpe_score(&m, &dists_1d(&pts, 9.5), 2).unwrap();
        let outside = klpe_score(&m, &dists_1d(&pts, 100.0), 2).unwrap();
        assert!((0.0..=1.0).contains(&inside));
        assert_eq!(outside, 1.0);
        assert!(inside < outside);
    }

    #[test]
    fn lof_far_point_is_large() {
        // A uniform-ish 1-D cloud; a faraway point must look sparse.
        let pts: Vec<f64> = (0..50).map(|i| i as f64 * 0.02).collect();
        let m = matrix_1d(&pts);
        let far = lof_score(&m, &dists_1d(&pts, 50.0), 3).unwrap();
        assert!(far > 2.0, "far LOF = {far}");
        let interior = lof_score(&m, &dists_1d(&pts, 0.5), 3).unwrap();
        assert!((0.8..=1.3).contains(&interior), "interior LOF = {interior}");
    }

    #[test]
    fn lof_handles_duplicate_clusters() {
        let pts = [0.0, 0.0, 0.0, 5.0, 5.0, 5.0];
        let m = matrix_1d(&pts);
        let on_cluster = lof_score(&m, &dists_1d(&pts, 0.0), 2).unwrap();
        assert_eq!(on_cluster, 1.0);
        let off = lof_score(&m, &dists_1d(&pts, 2.5), 2).unwrap();
        assert!(off.is_infinite() || off > 1.0);
    }

    #[test]
    fn scalarize_one_hot_matches_direct() {
        let m1 = matrix_1d(&[0.0, 1.0, 3.0]);
        let m2 = matrix_1d(&[5.0, 2.0, 1.0]);
        let s = scalarize(&[m1.clone(), m2], &[1.0, 0.0]).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(s.get(i, j), m1.get(i, j));
            }
        }
    }

    #[test]
    fn scalarize_rejects_zero_weights() {
        let m = matrix_1d(&[0.0, 1.0]);
        assert!(scalarize(&[m], &[0.0]).is_err());
    }

    #[test]
    fn connectivity_heuristic_applies_when_k_unset() {
        let m = matrix_1d(&[0.0, 1.0, 100.0, 101.0]);
        let scorer = BaselineScorer::fit(&m, None).unwrap();
        assert_eq!(scorer.k(), 2);
    }

    #[test]
    fn method_names_round_trip() {
        for m in ALL_METHODS {
            assert_eq!(m.to_string().parse::<BaselineMethod>().unwrap(), m);
        }
        assert!("nope".parse::<BaselineMethod>().is_err());
    }
}
