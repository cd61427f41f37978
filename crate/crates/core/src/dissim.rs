//! Per-criterion dissimilarity measures: coordinate-wise squared
//! differences for vector data, speed-histogram and shape measures for
//! planar trajectories, and weighted linear combination.

use std::fmt;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::data::{Dataset, DissimMatrix};
use crate::error::{config, usage, Result};

/// Declarative description of one dissimilarity criterion. Serialized as
/// JSON (`{"kind": "squared_diff_dim", "dim": 0}` etc.) for CLI configs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CriterionSpec {
    /// Squared difference in one feature dimension (0-based).
    SquaredDiffDim { dim: usize },
    /// Squared Euclidean distance over the listed dimensions.
    SquaredEuclidean { dims: Vec<usize> },
    /// Squared Euclidean distance between normalized speed histograms of
    /// two trajectories. `range: None` derives [0, max speed] from the
    /// trajectory collection at matrix-construction time.
    SpeedHistogram { bins: usize, range: Option<(f64, f64)> },
    /// Sum of squared point distances after arclength-uniform resampling
    /// of both trajectories at `points` positions.
    ShapeResample { points: usize },
    /// Nonnegative weighted sum of child criteria.
    WeightedCombo { weights: Vec<f64>, children: Vec<CriterionSpec> },
}

impl fmt::Display for CriterionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::SquaredDiffDim { dim } => write!(f, "squared_diff_dim({dim})"),
            Self::SquaredEuclidean { dims } => {
                write!(f, "squared_euclidean(")?;
                for (i, d) in dims.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{d}")?;
                }
                write!(f, ")")
            }
            Self::SpeedHistogram { bins, .. } => write!(f, "speed_histogram({bins})"),
            Self::ShapeResample { points } => write!(f, "shape_resample({points})"),
            Self::WeightedCombo { children, .. } => {
                write!(f, "weighted_combo({} children)", children.len())
            }
        }
    }
}

impl CriterionSpec {
    /// Checks the criterion against a vector-data feature dimension.
    pub fn validate_for_vectors(&self, feature_dim: usize) -> Result<()> {
        match self {
            Self::SquaredDiffDim { dim } => {
                if *dim >= feature_dim {
                    return Err(config(format!(
                        "criterion {self} references dimension {dim}, data has {feature_dim}"
                    )));
                }
            }
            Self::SquaredEuclidean { dims } => {
                if dims.is_empty() {
                    return Err(config("squared_euclidean needs at least one dimension"));
                }
                if let Some(d) = dims.iter().find(|&&d| d >= feature_dim) {
                    return Err(config(format!(
                        "criterion {self} references dimension {d}, data has {feature_dim}"
                    )));
                }
            }
            Self::WeightedCombo { weights, children } => {
                validate_weights(weights)?;
                if weights.len() != children.len() {
                    return Err(config("weighted_combo weights/children length mismatch"));
                }
                for c in children {
                    c.validate_for_vectors(feature_dim)?;
                }
            }
            Self::SpeedHistogram { .. } | Self::ShapeResample { .. } => {
                return Err(config(format!(
                    "criterion {self} requires trajectory data, not feature vectors"
                )));
            }
        }
        Ok(())
    }

    fn validate_for_trajectories(&self) -> Result<()> {
        match self {
            Self::SpeedHistogram { bins, range } => {
                if *bins < 1 {
                    return Err(config("speed_histogram needs at least one bin"));
                }
                if let Some((lo, hi)) = range {
                    check_range(*lo, *hi)?;
                }
                Ok(())
            }
            Self::ShapeResample { points } => {
                if *points < 2 {
                    return Err(config("shape_resample needs at least two points"));
                }
                Ok(())
            }
            Self::WeightedCombo { weights, children } => {
                validate_weights(weights)?;
                if weights.len() != children.len() {
                    return Err(config("weighted_combo weights/children length mismatch"));
                }
                for c in children {
                    c.validate_for_trajectories()?;
                }
                Ok(())
            }
            _ => Err(config(format!(
                "criterion {self} requires feature vectors, not trajectories"
            ))),
        }
    }

    /// Evaluates a vector-data criterion on two feature slices. Must be
    /// validated first; see [`pairwise_matrix`].
    pub fn evaluate_vectors(&self, a: &[f64], b: &[f64]) -> f64 {
        match self {
            Self::SquaredDiffDim { dim } => (a[*dim] - b[*dim]).powi(2),
            Self::SquaredEuclidean { dims } => {
                dims.iter().map(|&d| (a[d] - b[d]).powi(2)).sum()
            }
            Self::WeightedCombo { weights, children } => weights
                .iter()
                .zip(children)
                .map(|(w, c)| w * c.evaluate_vectors(a, b))
                .sum(),
            _ => unreachable!("trajectory criterion evaluated on vectors"),
        }
    }
}

fn validate_weights(weights: &[f64]) -> Result<()> {
    if weights.is_empty() {
        return Err(usage("weights must be nonempty"));
    }
    if weights.iter().any(|&w| !w.is_finite() || w < 0.0) {
        return Err(usage("weights must be finite and nonnegative"));
    }
    if weights.iter().all(|&w| w == 0.0) {
        return Err(usage("weights must not all be zero"));
    }
    Ok(())
}

fn check_range(lo: f64, hi: f64) -> Result<()> {
    if !(lo.is_finite() && hi.is_finite()) || hi <= lo {
        return Err(config(format!("degenerate histogram range [{lo}, {hi}]")));
    }
    Ok(())
}

/// Loads a JSON list of criteria.
pub fn read_criteria(reader: impl Read) -> Result<Vec<CriterionSpec>> {
    let specs: Vec<CriterionSpec> = serde_json::from_reader(reader)?;
    if specs.is_empty() {
        return Err(config("criteria list must be nonempty"));
    }
    Ok(specs)
}

pub fn read_criteria_path(path: impl AsRef<Path>) -> Result<Vec<CriterionSpec>> {
    read_criteria(std::fs::File::open(path)?)
}

/// Squared difference of one feature dimension.
pub fn squared_diff_dim(a: &[f64], b: &[f64], dim: usize) -> Result<f64> {
    if dim >= a.len() || dim >= b.len() {
        return Err(config(format!("dimension {dim} out of range")));
    }
    Ok((a[dim] - b[dim]).powi(2))
}

/// Nonnegative weighted sum of criterion values.
pub fn weighted_combo(values: &[f64], weights: &[f64]) -> Result<f64> {
    if values.len() != weights.len() {
        return Err(usage("values/weights length mismatch"));
    }
    validate_weights(weights)?;
    Ok(values.iter().zip(weights).map(|(v, w)| v * w).sum())
}

/// Pairwise dissimilarities of a vector dataset under one criterion:
/// symmetric, zero-diagonal, O(m N^2) work.
pub fn pairwise_matrix(data: &Dataset, criterion: &CriterionSpec) -> Result<DissimMatrix> {
    if data.is_empty() {
        return Err(usage("dataset must be nonempty"));
    }
    criterion.validate_for_vectors(data.dim())?;
    DissimMatrix::from_fn(data.len(), criterion.to_string(), |i, j| {
        criterion.evaluate_vectors(data.sample(i), data.sample(j))
    })
}

/// A planar trajectory: at least two finite (x, y) positions in time
/// order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    positions: Vec<(f64, f64)>,
}

impl Trajectory {
    pub fn new(positions: Vec<(f64, f64)>) -> Result<Self> {
        if positions.len() < 2 {
            return Err(usage("a trajectory needs at least two positions"));
        }
        if positions.iter().any(|&(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(usage("trajectory positions must be finite"));
        }
        Ok(Self { positions })
    }

    pub fn positions(&self) -> &[(f64, f64)] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Instantaneous speeds by finite differencing; length is one less
    /// than the number of positions.
    pub fn speeds(&self) -> Vec<f64> {
        self.positions
            .windows(2)
            .map(|w| {
                let (x0, y0) = w[0];
                let (x1, y1) = w[1];
                ((x1 - x0).powi(2) + (y1 - y0).powi(2)).sqrt()
            })
            .collect()
    }
}

/// Normalized speed histogram over [lo, hi]: unit total mass, with
/// out-of-range speeds clamped into the end bins so nothing is dropped.
pub fn speed_histogram(t: &Trajectory, bins: usize, range: (f64, f64)) -> Result<Vec<f64>> {
    if bins < 1 {
        return Err(config("histogram needs at least one bin"));
    }
    let (lo, hi) = range;
    check_range(lo, hi)?;
    let speeds = t.speeds();
    let width = (hi - lo) / bins as f64;
    let mut hist = vec![0.0; bins];
    for s in &speeds {
        let idx = (((s - lo) / width).floor() as isize).clamp(0, bins as isize - 1);
        hist[idx as usize] += 1.0;
    }
    let mass = speeds.len() as f64;
    for h in &mut hist {
        *h /= mass;
    }
    Ok(hist)
}

/// Squared Euclidean distance between the normalized speed histograms of
/// two trajectories.
pub fn speed_histogram_dissim(
    a: &Trajectory,
    b: &Trajectory,
    bins: usize,
    range: (f64, f64),
) -> Result<f64> {
    let ha = speed_histogram(a, bins, range)?;
    let hb = speed_histogram(b, bins, range)?;
    Ok(ha.iter().zip(&hb).map(|(x, y)| (x - y).powi(2)).sum())
}

/// Resamples a trajectory at `p` arclength-uniform positions, endpoints
/// included, by linear interpolation along the polyline. A zero-length
/// trajectory collapses to its first position.
pub fn resample_uniform(t: &Trajectory, p: usize) -> Result<Vec<(f64, f64)>> {
    if p < 2 {
        return Err(config("resampling needs at least two points"));
    }
    let pos = t.positions();
    let mut cumlen = Vec::with_capacity(pos.len());
    cumlen.push(0.0);
    for w in pos.windows(2) {
        let (x0, y0) = w[0];
        let (x1, y1) = w[1];
        let d = ((x1 - x0).powi(2) + (y1 - y0).powi(2)).sqrt();
        cumlen.push(cumlen.last().unwrap() + d);
    }
    let total = *cumlen.last().unwrap();
    if total == 0.0 {
        return Ok(vec![pos[0]; p]);
    }
    let mut out = Vec::with_capacity(p);
    let mut seg = 0usize;
    for i in 0..p {
        let target = total * i as f64 / (p - 1) as f64;
        while seg + 2 < cumlen.len() && cumlen[seg + 1] < target {
            seg += 1;
        }
        let seg_len = cumlen[seg + 1] - cumlen[seg];
        let frac = if seg_len == 0.0 { 0.0 } else { (target - cumlen[seg]) / seg_len };
        let (x0, y0) = pos[seg];
        let (x1, y1) = pos[seg + 1];
        out.push((x0 + frac * (x1 - x0), y0 + frac * (y1 - y0)));
    }
    Ok(out)
}

/// Shape dissimilarity: sum over `p` index-aligned resampled point pairs
/// of squared Euclidean distance.
pub fn shape_dissim(a: &Trajectory, b: &Trajectory, p: usize) -> Result<f64> {
    let ra = resample_uniform(a, p)?;
    let rb = resample_uniform(b, p)?;
    Ok(ra
        .iter()
        .zip(&rb)
        .map(|(&(ax, ay), &(bx, by))| (ax - bx).powi(2) + (ay - by).powi(2))
        .sum())
}

/// Pairwise dissimilarities of a trajectory collection under one
/// trajectory criterion. A `speed_histogram` criterion without an
/// explicit range uses [0, max speed over the collection].
pub fn pairwise_trajectory_matrix(
    trajectories: &[Trajectory],
    criterion: &CriterionSpec,
) -> Result<DissimMatrix> {
    if trajectories.is_empty() {
        return Err(usage("trajectory collection must be nonempty"));
    }
    criterion.validate_for_trajectories()?;
    let resolved = resolve_ranges(trajectories, criterion);
    DissimMatrix::from_fn(trajectories.len(), criterion.to_string(), |i, j| {
        trajectory_dissim(&trajectories[i], &trajectories[j], &resolved)
    })
}

fn resolve_ranges(trajectories: &[Trajectory], criterion: &CriterionSpec) -> CriterionSpec {
    match criterion {
        CriterionSpec::SpeedHistogram { bins, range: None } => {
            let max_speed = trajectories
                .iter()
                .flat_map(|t| t.speeds())
                .fold(0.0f64, f64::max);
            // Guard against an all-stationary collection.
            let hi = if max_speed > 0.0 { max_speed } else { 1.0 };
            CriterionSpec::SpeedHistogram { bins: *bins, range: Some((0.0, hi)) }
        }
        CriterionSpec::WeightedCombo { weights, children } => CriterionSpec::WeightedCombo {
            weights: weights.clone(),
            children: children.iter().map(|c| resolve_ranges(trajectories, c)).collect(),
        },
        other => other.clone(),
    }
}

fn trajectory_dissim(a: &Trajectory, b: &Trajectory, criterion: &CriterionSpec) -> f64 {
    match criterion {
        CriterionSpec::SpeedHistogram { bins, range: Some(range) } => {
            speed_histogram_dissim(a, b, *bins, *range).expect("validated criterion")
        }
        CriterionSpec::ShapeResample { points } => {
            shape_dissim(a, b, *points).expect("validated criterion")
        }
        CriterionSpec::WeightedCombo { weights, children } => weights
            .iter()
            .zip(children)
            .map(|(w, c)| w * trajectory_dissim(a, b, c))
            .sum(),
        _ => unreachable!("vector criterion evaluated on trajectories"),
    }
}

/// Reads trajectories from CSV rows `(traj_id, t, x, y)`, grouping by id
/// (output sorted by id) and ordering positions by t within each group.
pub fn read_trajectories(reader: impl Read) -> Result<Vec<(String, Trajectory)>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut groups: std::collections::BTreeMap<String, Vec<(f64, f64, f64)>> =
        std::collections::BTreeMap::new();
    for (line, record) in rdr.records().enumerate() {
        let record = record?;
        if record.len() != 4 {
            return Err(usage(format!(
                "trajectory row {} has {} columns, expected traj_id,t,x,y",
                line + 1,
                record.len()
            )));
        }
        let parse = |s: &str, what: &str| -> Result<f64> {
            s.parse::<f64>()
                .map_err(|e| usage(format!("trajectory row {}: bad {what}: {e}", line + 1)))
        };
        // Skip a header row if the numeric columns fail to parse.
        if line == 0 && record.iter().skip(1).any(|f| f.parse::<f64>().is_err()) {
            continue;
        }
        let t = parse(&record[1], "t")?;
        let x = parse(&record[2], "x")?;
        let y = parse(&record[3], "y")?;
        groups.entry(record[0].to_string()).or_default().push((t, x, y));
    }
    let mut out = Vec::with_capacity(groups.len());
    for (id, mut rows) in groups {
        rows.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let positions = rows.into_iter().map(|(_, x, y)| (x, y)).collect();
        out.push((id.clone(), Trajectory::new(positions).map_err(|e| {
            usage(format!("trajectory {id}: {e}"))
        })?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn traj(pts: &[(f64, f64)]) -> Trajectory {
        Trajectory::new(pts.to_vec()).unwrap()
    }

    #[test]
    fn squared_diff_examples() {
        assert!((squared_diff_dim(&[0.3], &[0.5], 0).unwrap() - 0.04).abs() < 1e-15);
        assert_eq!(squared_diff_dim(&[1.0, 2.0], &[1.0, 2.0], 1).unwrap(), 0.0);
        assert!(squared_diff_dim(&[1.0], &[1.0], 3).is_err());
    }

    #[test]
    fn unit_weights_give_squared_euclidean() {
        let a = [0.1, 0.2, 0.3, 0.4];
        let b = [0.5, 0.5, 0.5, 0.5];
        let per_dim: Vec<f64> =
            (0..4).map(|d| squared_diff_dim(&a, &b, d).unwrap()).collect();
        let combined = weighted_combo(&per_dim, &[1.0; 4]).unwrap();
        let direct = CriterionSpec::SquaredEuclidean { dims: vec![0, 1, 2, 3] }
            .evaluate_vectors(&a, &b);
        assert!((combined - direct).abs() < 1e-15);
    }

    #[test]
    fn weighted_combo_arithmetic() {
        assert_eq!(weighted_combo(&[2.0, 4.0], &[0.5, 0.25]).unwrap(), 2.0);
        assert_eq!(weighted_combo(&[7.0, 9.0], &[1.0, 0.0]).unwrap(), 7.0);
        assert!(weighted_combo(&[1.0], &[0.0]).is_err());
        assert!(weighted_combo(&[1.0, 2.0], &[1.0]).is_err());
    }

    #[test]
    fn speed_histogram_identical_trajectories() {
        let t = traj(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]);
        assert_eq!(speed_histogram_dissim(&t, &t, 10, (0.0, 2.0)).unwrap(), 0.0);
    }

    #[test]
    fn speed_histogram_same_bin_is_zero() {
        // Both constant speed, speeds 1.0 and 1.1 land in the same bin of
        // a 2-bin histogram over [0,4].
        let a = traj(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]);
        let b = traj(&[(0.0, 0.0), (1.1, 0.0), (2.2, 0.0)]);
        assert_eq!(speed_histogram_dissim(&a, &b, 2, (0.0, 4.0)).unwrap(), 0.0);
    }

    #[test]
    fn speed_histogram_disjoint_bins() {
        // All speeds 1 vs all speeds 2, bins isolating each: unit-mass
        // histograms differ in two bins -> (1-0)^2 + (0-1)^2 = 2.
        let a = traj(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]);
        let b = traj(&[(0.0, 0.0), (2.0, 0.0), (4.0, 0.0)]);
        let d = speed_histogram_dissim(&a, &b, 2, (0.5, 2.5)).unwrap();
        assert!((d - 2.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate_range_rejected() {
        let t = traj(&[(0.0, 0.0), (1.0, 0.0)]);
        assert!(speed_histogram_dissim(&t, &t, 2, (1.0, 1.0)).is_err());
        assert!(speed_histogram_dissim(&t, &t, 2, (2.0, 1.0)).is_err());
    }

    #[test]
    fn translation_invariance_of_speed_not_shape() {
        let a = traj(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.5)]);
        let b = traj(&[(5.0, 3.0), (6.0, 4.0), (7.0, 3.5)]);
        assert_eq!(speed_histogram_dissim(&a, &b, 8, (0.0, 3.0)).unwrap(), 0.0);
        assert!(shape_dissim(&a, &b, 10).unwrap() > 0.0);
    }

    #[test]
    fn shape_translated_by_unit_gives_p() {
        let a = traj(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0)]);
        let b = traj(&[(1.0, 0.0), (2.0, 0.0), (2.0, 1.0)]);
        for p in [2, 5, 17] {
            let d = shape_dissim(&a, &b, p).unwrap();
            assert!((d - p as f64).abs() < 1e-12, "p = {p}, d = {d}");
        }
    }

    #[test]
    fn shape_two_segments_hand_value() {
        // (0,0)->(1,0) vs (0,0)->(0,1), resampled at fractions {0, 1/2, 1}:
        // pairs contribute 0, (0.5^2 + 0.5^2), (1 + 1) -> 2.5.
        let a = traj(&[(0.0, 0.0), (1.0, 0.0)]);
        let b = traj(&[(0.0, 0.0), (0.0, 1.0)]);
        let d = shape_dissim(&a, &b, 3).unwrap();
        assert!((d - 2.5).abs() < 1e-12, "d = {d}");
    }

    #[test]
    fn shape_reparameterization_invariance() {
        // Same geometric path, different vertex sampling along segments.
        let a = traj(&[(0.0, 0.0), (2.0, 0.0), (2.0, 2.0)]);
        let b = traj(&[(0.0, 0.0), (0.5, 0.0), (1.7, 0.0), (2.0, 0.0), (2.0, 1.2), (2.0, 2.0)]);
        let d = shape_dissim(&a, &b, 100).unwrap();
        assert!(d < 1e-9, "d = {d}");
    }

    #[test]
    fn resample_endpoints_included() {
        let t = traj(&[(0.0, 0.0), (3.0, 4.0)]);
        let r = resample_uniform(&t, 5).unwrap();
        assert_eq!(r[0], (0.0, 0.0));
        assert_eq!(r[4], (3.0, 4.0));
        assert!(resample_uniform(&t, 1).is_err());
    }

    #[test]
    fn stationary_trajectory_resamples_to_start() {
        let t = traj(&[(2.0, 2.0), (2.0, 2.0), (2.0, 2.0)]);
        let r = resample_uniform(&t, 4).unwrap();
        assert!(r.iter().all(|&p| p == (2.0, 2.0)));
    }

    #[test]
    fn criteria_json_round_trip() {
        let text = r#"[
            {"kind": "squared_diff_dim", "dim": 0},
            {"kind": "squared_euclidean", "dims": [0, 1]},
            {"kind": "speed_histogram", "bins": 10, "range": null},
            {"kind": "shape_resample", "points": 100},
            {"kind": "weighted_combo", "weights": [1.0, 2.0],
             "children": [{"kind": "squared_diff_dim", "dim": 0},
                          {"kind": "squared_diff_dim", "dim": 1}]}
        ]"#;
        let specs = read_criteria(text.as_bytes()).unwrap();
        assert_eq!(specs.len(), 5);
        assert_eq!(specs[0], CriterionSpec::SquaredDiffDim { dim: 0 });
        let back = serde_json::to_string(&specs).unwrap();
        let again = read_criteria(back.as_bytes()).unwrap();
        assert_eq!(specs, again);
    }

    #[test]
    fn vector_matrix_mismatch_is_config_error() {
        let ds = Dataset::from_rows(vec![vec![0.0], vec![3.0]]).unwrap();
        let bad = CriterionSpec::SquaredDiffDim { dim: 5 };
        assert!(pairwise_matrix(&ds, &bad).is_err());
        let worse = CriterionSpec::SpeedHistogram { bins: 4, range: None };
        assert!(pairwise_matrix(&ds, &worse).is_err());
    }

    #[test]
    fn one_dimensional_matrix_example() {
        let ds = Dataset::from_rows(vec![vec![0.0], vec![3.0]]).unwrap();
        let m = pairwise_matrix(&ds, &CriterionSpec::SquaredDiffDim { dim: 0 }).unwrap();
        assert_eq!(m.get(0, 1), 9.0);
        assert_eq!(m.get(0, 0), 0.0);
        assert_eq!(m.get(1, 1), 0.0);
    }

    #[test]
    fn trajectory_csv_reader() {
        let text = "traj_id,t,x,y\nb,1,4,4\na,0,0,0\na,1,1,0\nb,0,3,3\n";
        let trajs = read_trajectories(text.as_bytes()).unwrap();
        assert_eq!(trajs.len(), 2);
        assert_eq!(trajs[0].0, "a");
        assert_eq!(trajs[0].1.positions(), &[(0.0, 0.0), (1.0, 0.0)]);
        assert_eq!(trajs[1].1.positions(), &[(3.0, 3.0), (4.0, 4.0)]);
    }

    #[test]
    fn trajectory_matrix_derives_speed_range() {
        let trajs = vec![
            traj(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]),
            traj(&[(0.0, 0.0), (3.0, 0.0), (6.0, 0.0)]),
            traj(&[(0.0, 0.0), (1.05, 0.0), (2.1, 0.0)]),
        ];
        let spec = CriterionSpec::SpeedHistogram { bins: 3, range: None };
        let m = pairwise_trajectory_matrix(&trajs, &spec).unwrap();
        // Derived range [0, 3]: speeds 1.0 and 1.05 share the middle bin.
        assert_eq!(m.get(0, 2), 0.0);
        assert!(m.get(0, 1) > 0.0);
    }
}
