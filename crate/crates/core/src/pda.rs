//! The Pareto-depth anomaly detector: training-phase front construction
//! over all training dyads, per-criterion neighbor-count selection, and
//! depth-based scoring of test samples.

use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::data::{Dataset, DissimMatrix, Sample};
use crate::dissim::{pairwise_matrix, CriterionSpec};
use crate::dominance::strictly_dominates;
use crate::dyad::{Dyad, DyadPair, DyadSet};
use crate::error::{usage, Error, Result};
use crate::knn::select_k;
use crate::nds::{nds_fast_2d, nds_general, nds_peel, FrontAssignment};

/// Which sorting routine the training phase uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NdsAlgo {
    /// Two criteria: the fast 2-d sweep. Otherwise the dominated-lists
    /// sort for small inputs and the O(n)-memory peel for large ones.
    #[default]
    Auto,
    General,
    Peel,
    Fast2d,
}

/// Above this many dyads, `Auto` switches from the dominated-lists sort
/// to the low-memory peel: the lists grow like n^2 and become the
/// dominant allocation well before the comparisons become the problem.
const AUTO_PEEL_THRESHOLD: usize = 20_000;

/// How test-dyad depths are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DepthQuery {
    /// Scan fronts shallow-to-deep for the first containing a dominated
    /// member. Exact.
    #[default]
    ExactScan,
    /// Binary search over fronts with the same per-front test. Faster but
    /// approximate: the per-front predicate is not monotone in depth, so
    /// the bisection can overshoot the true minimum.
    FrontBisect,
    /// Smallest front with no member dominating the dyad. A different,
    /// monotone depth notion; computed by bisection, exact for what it
    /// defines.
    Insertion,
}

/// Training options.
#[derive(Debug, Clone, Default)]
pub struct TrainOptions {
    pub nds: NdsAlgo,
    /// Per-criterion neighbor counts, bypassing the connectivity
    /// heuristic. Must have one entry >= 1 per criterion.
    pub k_override: Option<Vec<usize>>,
}

/// Provenance of one test dyad: which criterion selected which training
/// sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborRef {
    pub criterion: usize,
    pub train: usize,
}

/// Scoring result for one test sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreReport {
    /// Mean dyad depth v(X).
    pub score: f64,
    /// Depth of each test dyad, in [1, M + 1].
    pub depths: Vec<u32>,
    /// Per-dyad provenance, aligned with `depths`.
    pub neighbors: Vec<NeighborRef>,
    /// Whether `score` strictly exceeds the supplied threshold.
    pub is_anomaly: bool,
}

/// A trained detector. Immutable after training; scoring is read-only and
/// safe to call from any number of threads.
#[derive(Debug, Clone)]
pub struct PdaModel {
    criteria: Vec<CriterionSpec>,
    dataset: Dataset,
    matrices: Vec<DissimMatrix>,
    dyads: DyadSet,
    fronts: FrontAssignment,
    k: Vec<usize>,
    /// Per-front componentwise maxima (front-major, K values each); a
    /// cheap necessary condition for "dominates some member".
    front_max: Vec<f64>,
}

const MODEL_FORMAT: &str = "pda-model";
const MODEL_VERSION: u32 = 1;

/// On-disk model representation: versioned structured text (JSON). The
/// dyad set is rebuilt from the matrices on load, in the same pair order
/// used at training time.
#[derive(Serialize, Deserialize)]
struct ModelFile {
    format: String,
    version: u32,
    /// Free-form provenance (tool version, config digest, ...); ignored
    /// on load.
    #[serde(default, skip_serializing_if = "serde_json::Map::is_empty")]
    meta: serde_json::Map<String, serde_json::Value>,
    criteria: Vec<CriterionSpec>,
    dataset: Dataset,
    matrices: Vec<DissimMatrix>,
    k: Vec<usize>,
    fronts: FrontAssignment,
}

impl PdaModel {
    /// Trains with default options: fronts over all training dyads, k per
    /// criterion from the k-NN-graph connectivity heuristic.
    pub fn train(dataset: Dataset, criteria: Vec<CriterionSpec>) -> Result<Self> {
        Self::train_with(dataset, criteria, &TrainOptions::default())
    }

    pub fn train_with(
        dataset: Dataset,
        criteria: Vec<CriterionSpec>,
        opts: &TrainOptions,
    ) -> Result<Self> {
        if dataset.len() < 3 {
            return Err(usage("training requires at least three samples"));
        }
        if criteria.is_empty() {
            return Err(usage("training requires at least one criterion"));
        }
        let matrices: Vec<DissimMatrix> = criteria
            .iter()
            .map(|c| pairwise_matrix(&dataset, c))
            .collect::<Result<_>>()?;
        let dyads = DyadSet::build(&matrices)?;
        let fronts = sort_dyads(&dyads, opts.nds)?;
        let k = match &opts.k_override {
            Some(ks) => {
                if ks.len() != criteria.len() {
                    return Err(usage("k override must supply one value per criterion"));
                }
                if ks.iter().any(|&k| k == 0 || k >= dataset.len()) {
                    return Err(usage("k override values must satisfy 1 <= k < N"));
                }
                ks.clone()
            }
            // Each criterion gets its own k, chosen independently.
            None => matrices.iter().map(select_k).collect::<Result<_>>()?,
        };
        let front_max = front_maxima(&dyads, &fronts);
        Ok(Self { criteria, dataset, matrices, dyads, fronts, k, front_max })
    }

    pub fn criteria(&self) -> &[CriterionSpec] {
        &self.criteria
    }

    pub fn dataset(&self) -> &Dataset {
        &self.dataset
    }

    pub fn matrices(&self) -> &[DissimMatrix] {
        &self.matrices
    }

    pub fn dyads(&self) -> &DyadSet {
        &self.dyads
    }

    pub fn fronts(&self) -> &FrontAssignment {
        &self.fronts
    }

    /// Deepest front index M.
    pub fn num_fronts(&self) -> usize {
        self.fronts.num_fronts()
    }

    /// Per-criterion neighbor counts k_1..k_K.
    pub fn k(&self) -> &[usize] {
        &self.k
    }

    /// Dissimilarities between a test sample and every training sample,
    /// one row per criterion.
    pub fn test_dissims(&self, x: &Sample) -> Result<Vec<Vec<f64>>> {
        if x.dim() != self.dataset.dim() {
            return Err(usage(format!(
                "test sample has {} features, model expects {}",
                x.dim(),
                self.dataset.dim()
            )));
        }
        Ok(self
            .criteria
            .iter()
            .map(|c| {
                self.dataset
                    .iter()
                    .map(|s| c.evaluate_vectors(x.features(), s))
                    .collect()
            })
            .collect())
    }

    /// Selects, for each criterion l, the k_l nearest training samples
    /// (ties by ascending index) given per-criterion dissimilarity rows.
    fn select_neighbors(&self, dissims: &[Vec<f64>]) -> Vec<NeighborRef> {
        let n = self.dataset.len();
        let mut out = Vec::with_capacity(self.k.iter().sum());
        for (l, row) in dissims.iter().enumerate() {
            let mut order: Vec<u32> = (0..n as u32).collect();
            order.sort_unstable_by(|&a, &b| {
                row[a as usize]
                    .partial_cmp(&row[b as usize])
                    .unwrap()
                    .then(a.cmp(&b))
            });
            out.extend(
                order
                    .iter()
                    .take(self.k[l])
                    .map(|&j| NeighborRef { criterion: l, train: j as usize }),
            );
        }
        out
    }

    fn check_dissims(&self, dissims: &[Vec<f64>]) -> Result<()> {
        if dissims.len() != self.criteria.len() {
            return Err(usage("one dissimilarity row per criterion is required"));
        }
        for row in dissims {
            if row.len() != self.dataset.len() {
                return Err(usage("dissimilarity rows must cover every training sample"));
            }
            if row.iter().any(|v| !v.is_finite() || *v < 0.0) {
                return Err(usage("dissimilarities must be finite and nonnegative"));
            }
        }
        Ok(())
    }

    /// Creates the s = sum(k_l) test dyads for a sample. A training
    /// sample selected under several criteria contributes one dyad per
    /// selection (duplicates kept with multiplicity).
    pub fn make_test_dyads(&self, x: &Sample) -> Result<Vec<Dyad>> {
        let dissims = self.test_dissims(x)?;
        Ok(self.dyads_from_neighbors(&dissims, &self.select_neighbors(&dissims)))
    }

    fn dyads_from_neighbors(&self, dissims: &[Vec<f64>], neighbors: &[NeighborRef]) -> Vec<Dyad> {
        neighbors
            .iter()
            .map(|nb| Dyad {
                values: dissims.iter().map(|row| row[nb.train]).collect(),
                pair: DyadPair::Test { train: nb.train as u32 },
            })
            .collect()
    }

    /// Depth of a test dyad: the smallest front index l such that the
    /// dyad strictly dominates at least one member of front l, or M + 1
    /// when it dominates no training dyad at all.
    pub fn dyad_depth(&self, values: &[f64]) -> u32 {
        self.dyad_depth_with(values, DepthQuery::ExactScan)
    }

    pub fn dyad_depth_with(&self, values: &[f64], query: DepthQuery) -> u32 {
        assert_eq!(values.len(), self.dyads.criteria(), "dyad arity mismatch");
        let m = self.num_fronts();
        match query {
            DepthQuery::ExactScan => {
                for l in 1..=m {
                    if self.below_front(l, values) {
                        return l as u32;
                    }
                }
                (m + 1) as u32
            }
            DepthQuery::FrontBisect => {
                // Assumes "below front l" is monotone in l, which fails on
                // some inputs; kept as an opt-in approximation.
                let first = partition_point_one_based(m, |l| !self.below_front(l, values));
                first as u32
            }
            DepthQuery::Insertion => {
                let first =
                    partition_point_one_based(m, |l| self.front_dominates(l, values));
                first as u32
            }
        }
    }

    /// Does the dyad strictly dominate at least one member of front l?
    fn below_front(&self, l: usize, d: &[f64]) -> bool {
        let k = self.dyads.criteria();
        let maxima = &self.front_max[(l - 1) * k..l * k];
        if d.iter().zip(maxima).any(|(v, m)| v > m) {
            return false;
        }
        let front = self.fronts.front(l);
        if k == 2 {
            // Staircase: members ascend in criterion 1 and descend in
            // criterion 2. The best dominance candidate is the first
            // member at or right of d's first coordinate.
            let pos = front.partition_point(|&i| self.dyads.values(i as usize)[0] < d[0]);
            if pos == front.len() {
                return false;
            }
            let m = self.dyads.values(front[pos] as usize);
            m[1] > d[1] || (m[1] == d[1] && m[0] > d[0])
        } else {
            front
                .iter()
                .any(|&i| strictly_dominates(d, self.dyads.values(i as usize)))
        }
    }

    /// Does at least one member of front l strictly dominate the dyad?
    /// Monotone in l: if front l has a dominator, so do all shallower
    /// fronts.
    fn front_dominates(&self, l: usize, d: &[f64]) -> bool {
        let front = self.fronts.front(l);
        if self.dyads.criteria() == 2 {
            // The best candidate is the last member at or left of d.
            let pos = front.partition_point(|&i| self.dyads.values(i as usize)[0] <= d[0]);
            if pos == 0 {
                return false;
            }
            let m = self.dyads.values(front[pos - 1] as usize);
            m[1] < d[1] || (m[1] == d[1] && m[0] < d[0])
        } else {
            front
                .iter()
                .any(|&i| strictly_dominates(self.dyads.values(i as usize), d))
        }
    }

    /// Scores a test sample: v(X) is the mean depth of its test dyads,
    /// declared anomalous when strictly above `sigma`.
    pub fn score(&self, x: &Sample, sigma: f64) -> Result<ScoreReport> {
        self.score_with(x, sigma, DepthQuery::ExactScan)
    }

    pub fn score_with(&self, x: &Sample, sigma: f64, query: DepthQuery) -> Result<ScoreReport> {
        let dissims = self.test_dissims(x)?;
        self.score_from_dissims_with(&dissims, sigma, query)
    }

    /// Scores from precomputed per-criterion dissimilarity rows. This is
    /// the entry point for data types whose dissimilarities are computed
    /// outside the model (e.g. trajectory criteria).
    pub fn score_from_dissims(&self, dissims: &[Vec<f64>], sigma: f64) -> Result<ScoreReport> {
        self.score_from_dissims_with(dissims, sigma, DepthQuery::ExactScan)
    }

    pub fn score_from_dissims_with(
        &self,
        dissims: &[Vec<f64>],
        sigma: f64,
        query: DepthQuery,
    ) -> Result<ScoreReport> {
        self.check_dissims(dissims)?;
        let neighbors = self.select_neighbors(dissims);
        let dyads = self.dyads_from_neighbors(dissims, &neighbors);
        let depths: Vec<u32> =
            dyads.iter().map(|d| self.dyad_depth_with(&d.values, query)).collect();
        let score = depths.iter().map(|&e| e as f64).sum::<f64>() / depths.len() as f64;
        Ok(ScoreReport { score, depths, neighbors, is_anomaly: score > sigma })
    }

    /// Writes the model as versioned structured text.
    pub fn save(&self, w: impl Write) -> Result<()> {
        self.save_with_meta(w, serde_json::Map::new())
    }

    /// As [`save`](Self::save), embedding caller-supplied provenance.
    pub fn save_with_meta(
        &self,
        w: impl Write,
        meta: serde_json::Map<String, serde_json::Value>,
    ) -> Result<()> {
        let file = ModelFile {
            format: MODEL_FORMAT.to_string(),
            version: MODEL_VERSION,
            meta,
            criteria: self.criteria.clone(),
            dataset: self.dataset.clone(),
            matrices: self.matrices.clone(),
            k: self.k.clone(),
            fronts: self.fronts.clone(),
        };
        serde_json::to_writer(BufWriter::new(w), &file)?;
        Ok(())
    }

    pub fn save_path(&self, path: impl AsRef<Path>) -> Result<()> {
        self.save(std::fs::File::create(path)?)
    }

    pub fn load(r: impl Read) -> Result<Self> {
        let file: ModelFile = serde_json::from_reader(BufReader::new(r))?;
        if file.format != MODEL_FORMAT {
            return Err(Error::Model(format!("unexpected format tag {:?}", file.format)));
        }
        if file.version != MODEL_VERSION {
            return Err(Error::Model(format!(
                "unsupported model version {} (expected {MODEL_VERSION})",
                file.version
            )));
        }
        let dyads = DyadSet::build(&file.matrices)?;
        if file.fronts.len() != dyads.len() {
            return Err(Error::Model("front assignment does not cover the dyad set".into()));
        }
        if file.k.len() != file.criteria.len()
            || file.k.iter().any(|&k| k == 0 || k >= file.dataset.len())
        {
            return Err(Error::Model("invalid neighbor counts".into()));
        }
        let front_max = front_maxima(&dyads, &file.fronts);
        Ok(Self {
            criteria: file.criteria,
            dataset: file.dataset,
            matrices: file.matrices,
            dyads,
            fronts: file.fronts,
            k: file.k,
            front_max,
        })
    }

    pub fn load_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::load(std::fs::File::open(path)?)
    }
}

fn sort_dyads(dyads: &DyadSet, algo: NdsAlgo) -> Result<FrontAssignment> {
    let points = dyads.points();
    match algo {
        NdsAlgo::Fast2d => nds_fast_2d(points),
        NdsAlgo::General => nds_general(points),
        NdsAlgo::Peel => nds_peel(points),
        NdsAlgo::Auto => {
            if points.dim() == 2 {
                nds_fast_2d(points)
            } else if points.len() <= AUTO_PEEL_THRESHOLD {
                nds_general(points)
            } else {
                nds_peel(points)
            }
        }
    }
}

fn front_maxima(dyads: &DyadSet, fronts: &FrontAssignment) -> Vec<f64> {
    let k = dyads.criteria();
    let mut out = Vec::with_capacity(fronts.num_fronts() * k);
    for front in fronts.fronts() {
        let mut maxima = vec![f64::NEG_INFINITY; k];
        for &i in front {
            for (m, v) in maxima.iter_mut().zip(dyads.values(i as usize)) {
                *m = m.max(*v);
            }
        }
        out.extend(maxima);
    }
    out
}

/// First l in 1..=m (or m + 1 if none) satisfying "not pred": bisection
/// over a predicate that is true on a prefix of 1..=m.
fn partition_point_one_based(m: usize, pred: impl Fn(usize) -> bool) -> usize {
    let mut lo = 1usize;
    let mut hi = m + 1;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Dataset;

    fn spec_dims(k: usize) -> Vec<CriterionSpec> {
        (0..k).map(|dim| CriterionSpec::SquaredDiffDim { dim }).collect()
    }

    fn grid_dataset() -> Dataset {
        // 8 spread-out points in the unit square.
        Dataset::from_rows(vec![
            vec![0.05, 0.1],
            vec![0.2, 0.8],
            vec![0.35, 0.45],
            vec![0.5, 0.15],
            vec![0.6, 0.9],
            vec![0.75, 0.3],
            vec![0.9, 0.65],
            vec![0.95, 0.05],
        ])
        .unwrap()
    }

    #[test]
    fn train_builds_all_dyads_and_fronts() {
        let model = PdaModel::train(grid_dataset(), spec_dims(2)).unwrap();
        assert_eq!(model.dyads().len(), 28);
        assert_eq!(model.fronts().len(), 28);
        assert!(model.num_fronts() >= 1);
        assert!(model.k().iter().all(|&k| k >= 1));
    }

    #[test]
    fn forty_samples_give_780_dyads() {
        let rows: Vec<Vec<f64>> = (0..40)
            .map(|i| {
                let t = i as f64 * 0.61;
                vec![t.sin().abs(), (t * 1.7).cos().abs()]
            })
            .collect();
        let model = PdaModel::train(Dataset::from_rows(rows).unwrap(), spec_dims(2)).unwrap();
        assert_eq!(model.dyads().len(), 780);
    }

    #[test]
    fn one_criterion_three_samples_is_a_chain() {
        let ds = Dataset::from_rows(vec![vec![0.0], vec![1.0], vec![5.0]]).unwrap();
        let model = PdaModel::train(ds, spec_dims(1)).unwrap();
        assert_eq!(model.dyads().len(), 3);
        // Distinct scalar dyads totally ordered: three singleton fronts.
        assert_eq!(model.num_fronts(), 3);
        let sorted: Vec<f64> = {
            let mut v: Vec<f64> =
                model.dyads().iter_values().map(|d| d[0]).collect();
            v.sort_by(|a, b| a.partial_cmp(b).unwrap());
            v
        };
        for l in 1..=3 {
            let members = model.fronts().front(l);
            assert_eq!(members.len(), 1);
            assert_eq!(model.dyads().values(members[0] as usize)[0], sorted[l - 1]);
        }
    }

    #[test]
    fn identical_samples_collapse_to_one_front() {
        let ds = Dataset::from_rows(vec![vec![1.0, 2.0]; 5]).unwrap();
        let model = PdaModel::train(ds, spec_dims(2)).unwrap();
        assert_eq!(model.num_fronts(), 1);
        assert!(model.dyads().iter_values().all(|d| d == [0.0, 0.0]));
        assert_eq!(model.k(), &[1, 1]);
    }

    #[test]
    fn test_dyad_counts_and_multiplicity() {
        let model = PdaModel::train_with(
            grid_dataset(),
            spec_dims(2),
            &TrainOptions { k_override: Some(vec![3, 6]), ..Default::default() },
        )
        .unwrap();
        let x = Sample::new(vec![0.3, 0.3]).unwrap();
        let dyads = model.make_test_dyads(&x).unwrap();
        assert_eq!(dyads.len(), 9);

        // A sample coinciding with a training point: its nearest neighbor
        // under both criteria is that point, so the all-zero dyad appears
        // twice (multiplicity kept).
        let model = PdaModel::train_with(
            grid_dataset(),
            spec_dims(2),
            &TrainOptions { k_override: Some(vec![1, 1]), ..Default::default() },
        )
        .unwrap();
        let x = Sample::new(vec![0.35, 0.45]).unwrap();
        let dyads = model.make_test_dyads(&x).unwrap();
        assert_eq!(dyads.len(), 2);
        assert_eq!(dyads[0].values, vec![0.0, 0.0]);
        assert_eq!(dyads[0], dyads[1]);
        assert_eq!(dyads[0].pair, DyadPair::Test { train: 2 });
    }

    #[test]
    fn coincident_single_criterion_dyad_is_zero() {
        let ds = Dataset::from_rows(vec![vec![0.0], vec![1.0], vec![4.0]]).unwrap();
        let model = PdaModel::train_with(
            ds,
            spec_dims(1),
            &TrainOptions { k_override: Some(vec![1]), ..Default::default() },
        )
        .unwrap();
        let dyads = model.make_test_dyads(&Sample::new(vec![1.0]).unwrap()).unwrap();
        assert_eq!(dyads.len(), 1);
        assert_eq!(dyads[0].values, vec![0.0]);
    }

    #[test]
    fn zero_dyad_has_depth_one_and_giant_dyad_m_plus_one() {
        let model = PdaModel::train(grid_dataset(), spec_dims(2)).unwrap();
        assert_eq!(model.dyad_depth(&[0.0, 0.0]), 1);
        let m = model.num_fronts() as u32;
        assert_eq!(model.dyad_depth(&[100.0, 100.0]), m + 1);
    }

    #[test]
    fn score_is_mean_of_depths() {
        let model = PdaModel::train(grid_dataset(), spec_dims(2)).unwrap();
        let x = Sample::new(vec![0.32, 0.44]).unwrap();
        let report = model.score(&x, 1e9).unwrap();
        let mean = report.depths.iter().map(|&e| e as f64).sum::<f64>()
            / report.depths.len() as f64;
        assert_eq!(report.score, mean);
        assert_eq!(report.depths.len(), model.k().iter().sum::<usize>());
        assert_eq!(report.neighbors.len(), report.depths.len());
        assert!(!report.is_anomaly);
        assert!(report.score >= 1.0);
        assert!(report.score <= model.num_fronts() as f64 + 1.0);
    }

    #[test]
    fn threshold_is_strict() {
        let model = PdaModel::train(grid_dataset(), spec_dims(2)).unwrap();
        let x = Sample::new(vec![0.3, 0.3]).unwrap();
        let r = model.score(&x, 0.0).unwrap();
        assert!(r.is_anomaly);
        let r2 = model.score(&x, r.score).unwrap();
        assert!(!r2.is_anomaly, "score == sigma must not be an anomaly");
    }

    #[test]
    fn nominal_scores_below_outlier_scores() {
        let model = PdaModel::train(grid_dataset(), spec_dims(2)).unwrap();
        let nominal = model.score(&Sample::new(vec![0.4, 0.4]).unwrap(), 0.0).unwrap();
        let outlier = model.score(&Sample::new(vec![3.0, 3.0]).unwrap(), 0.0).unwrap();
        assert!(nominal.score < outlier.score);
    }

    #[test]
    fn depth_query_variants_agree_on_exact_scan_lower_bound() {
        let model = PdaModel::train(grid_dataset(), spec_dims(2)).unwrap();
        for d in [[0.0, 0.0], [0.01, 0.2], [0.3, 0.05], [0.5, 0.5], [2.0, 2.0]] {
            let exact = model.dyad_depth_with(&d, DepthQuery::ExactScan);
            let bisect = model.dyad_depth_with(&d, DepthQuery::FrontBisect);
            // Bisection may overshoot but never undershoots the minimum.
            assert!(bisect >= exact);
        }
    }

    #[test]
    fn save_load_round_trip() {
        let model = PdaModel::train(grid_dataset(), spec_dims(2)).unwrap();
        let mut buf = Vec::new();
        model.save(&mut buf).unwrap();
        let loaded = PdaModel::load(buf.as_slice()).unwrap();
        assert_eq!(loaded.k(), model.k());
        assert_eq!(loaded.fronts(), model.fronts());
        assert_eq!(loaded.dyads(), model.dyads());
        let x = Sample::new(vec![0.7, 0.2]).unwrap();
        assert_eq!(
            model.score(&x, 2.0).unwrap(),
            loaded.score(&x, 2.0).unwrap()
        );
    }

    #[test]
    fn load_rejects_wrong_version() {
        let model = PdaModel::train(grid_dataset(), spec_dims(2)).unwrap();
        let mut buf = Vec::new();
        model.save(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap().replace("\"version\":1", "\"version\":99");
        assert!(PdaModel::load(text.as_bytes()).is_err());
    }

    #[test]
    fn train_preconditions() {
        let tiny = Dataset::from_rows(vec![vec![0.0], vec![1.0]]).unwrap();
        assert!(PdaModel::train(tiny, spec_dims(1)).is_err());
        assert!(PdaModel::train(grid_dataset(), vec![]).is_err());
    }
}
