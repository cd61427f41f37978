//! ROC/AUC computation and the simulated four-criteria experiment
//! comparing the Pareto-depth detector against the scalarized baselines.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::{
    grid_weights, scalarize, scalarize_rows, BaselineMethod, BaselineScorer, ALL_METHODS,
};
use crate::data::{Dataset, Sample};
use crate::dissim::CriterionSpec;
use crate::error::{usage, Result};
use crate::pda::{NdsAlgo, PdaModel, TrainOptions};

/// A ROC curve and its area. Scores are oriented so that higher means
/// more anomalous; anomalous samples are the positive class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RocResult {
    /// (false-positive-rate, true-positive-rate) pairs from (0,0) to
    /// (1,1), one step per distinct score value.
    pub points: Vec<(f64, f64)>,
    /// Trapezoidal area under the curve.
    pub auc: f64,
}

/// ROC curve and exact AUC. Ties across classes produce diagonal curve
/// segments, so the trapezoidal area equals the tie-aware pair statistic
/// P(anomalous > nominal) + P(tie)/2.
pub fn auc(nominal: &[f64], anomalous: &[f64]) -> Result<RocResult> {
    if nominal.is_empty() || anomalous.is_empty() {
        return Err(usage("AUC requires at least one score in each class"));
    }
    if nominal.iter().chain(anomalous).any(|v| !v.is_finite()) {
        return Err(usage("scores must be finite"));
    }
    let mut scored: Vec<(f64, bool)> = nominal
        .iter()
        .map(|&s| (s, false))
        .chain(anomalous.iter().map(|&s| (s, true)))
        .collect();
    // Descending by score: the curve sweeps from the strictest threshold.
    scored.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());

    let np = anomalous.len() as f64;
    let nn = nominal.len() as f64;
    let mut points = Vec::with_capacity(scored.len() + 1);
    points.push((0.0, 0.0));
    let mut tp = 0usize;
    let mut fp = 0usize;
    let mut auc = 0.0;
    let mut i = 0;
    while i < scored.len() {
        let mut j = i;
        let (mut d_tp, mut d_fp) = (0usize, 0usize);
        while j < scored.len() && scored[j].0 == scored[i].0 {
            if scored[j].1 {
                d_tp += 1;
            } else {
                d_fp += 1;
            }
            j += 1;
        }
        let (fpr0, tpr0) = (fp as f64 / nn, tp as f64 / np);
        tp += d_tp;
        fp += d_fp;
        let (fpr1, tpr1) = (fp as f64 / nn, tp as f64 / np);
        auc += (fpr1 - fpr0) * (tpr0 + tpr1) / 2.0;
        points.push((fpr1, tpr1));
        i = j;
    }
    Ok(RocResult { points, auc })
}

/// AUC as the Mann-Whitney statistic via midranks:
/// (rank-sum of anomalous − n_a(n_a+1)/2) / (n_a · n_n). Algebraically
/// equal to the trapezoidal area; kept separate as a second route.
pub fn mann_whitney_auc(nominal: &[f64], anomalous: &[f64]) -> Result<f64> {
    if nominal.is_empty() || anomalous.is_empty() {
        return Err(usage("AUC requires at least one score in each class"));
    }
    let mut scored: Vec<(f64, bool)> = nominal
        .iter()
        .map(|&s| (s, false))
        .chain(anomalous.iter().map(|&s| (s, true)))
        .collect();
    scored.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut rank_sum = 0.0;
    let mut i = 0;
    while i < scored.len() {
        let mut j = i;
        while j < scored.len() && scored[j].0 == scored[i].0 {
            j += 1;
        }
        let midrank = (i + 1 + j) as f64 / 2.0;
        for item in &scored[i..j] {
            if item.1 {
                rank_sum += midrank;
            }
        }
        i = j;
    }
    let na = anomalous.len() as f64;
    let nn = nominal.len() as f64;
    Ok((rank_sum - na * (na + 1.0) / 2.0) / (na * nn))
}

/// Simulation configuration. Defaults match the four-criteria synthetic
/// experiment: 300 nominal training samples uniform on [0,1]^4, 100 test
/// samples where each of four anomalous classes is drawn with probability
/// 0.05 (anomalous class c replaces coordinate c with
/// Uniform[shift_low, shift_high]), criteria = per-dimension squared
/// differences.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimConfig {
    pub runs: usize,
    pub seed: u64,
    /// Weight-grid density per axis for the baselines.
    pub grid_points: usize,
    pub n_train: usize,
    pub n_test: usize,
    pub dim: usize,
    pub class_prob: f64,
    pub shift_low: f64,
    pub shift_high: f64,
    /// Baseline k override; `None` uses the connectivity heuristic per
    /// weight vector.
    pub baseline_k: Option<usize>,
    #[serde(default)]
    pub nds: NdsAlgo,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            runs: 100,
            seed: 42,
            grid_points: 6,
            n_train: 300,
            n_test: 100,
            dim: 4,
            class_prob: 0.05,
            shift_low: 1.0,
            shift_high: 1.1,
            baseline_k: None,
            nds: NdsAlgo::Auto,
        }
    }
}

/// Mean AUC and standard error for one weight vector.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightAuc {
    pub weights: Vec<f64>,
    pub mean_auc: f64,
    pub stderr: f64,
}

/// Per-method aggregate over the weight grid: the median and best of the
/// per-weight mean AUCs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MethodSummary {
    pub median_auc: f64,
    pub median_stderr: f64,
    pub best_auc: f64,
    pub best_stderr: f64,
    pub best_weights: Vec<f64>,
    pub per_weight: Vec<WeightAuc>,
}

/// Aggregated experiment report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub runs: usize,
    pub seed: u64,
    pub grid_points: usize,
    /// False when runs == 1 and the standard errors are reported as 0.
    pub stderr_defined: bool,
    pub pda_mean_auc: f64,
    pub pda_stderr: f64,
    pub knn_dist: MethodSummary,
    pub knn_sum: MethodSummary,
    pub lof: MethodSummary,
    pub klpe: MethodSummary,
}

impl ExperimentReport {
    pub fn baseline(&self, method: BaselineMethod) -> &MethodSummary {
        match method {
            BaselineMethod::KnnDist => &self.knn_dist,
            BaselineMethod::KnnSum => &self.knn_sum,
            BaselineMethod::Lof => &self.lof,
            BaselineMethod::Klpe => &self.klpe,
        }
    }
}

/// Per-run AUCs, for the companion CSV.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunDetail {
    pub run: usize,
    pub pda_auc: f64,
    /// Within-run median and best over the weight grid, per method.
    pub baseline_median: [f64; 4],
    pub baseline_best: [f64; 4],
}

struct RunResult {
    pda_auc: f64,
    /// method-major, then weight index.
    baseline_aucs: [Vec<f64>; 4],
}

/// Runs the full experiment and aggregates. Deterministic for a fixed
/// config: each run draws from its own counter-derived RNG stream and
/// aggregation is ordered by run index, so results do not depend on
/// thread count.
pub fn run_simulation(cfg: &SimConfig) -> Result<ExperimentReport> {
    Ok(run_simulation_detailed(cfg)?.0)
}

pub fn run_simulation_detailed(cfg: &SimConfig) -> Result<(ExperimentReport, Vec<RunDetail>)> {
    if cfg.runs < 1 {
        return Err(usage("at least one run is required"));
    }
    if cfg.dim < 1 || cfg.class_prob * cfg.dim as f64 > 1.0 {
        return Err(usage("invalid dimension / class probability"));
    }
    let weights = grid_weights(cfg.dim, cfg.grid_points);
    let results: Vec<Result<RunResult>> = (0..cfg.runs)
        .into_par_iter()
        .map(|run| simulate_run(cfg, run, &weights))
        .collect();
    let results: Vec<RunResult> = results.into_iter().collect::<Result<_>>()?;

    let pda: Vec<f64> = results.iter().map(|r| r.pda_auc).collect();
    let (pda_mean, pda_stderr) = mean_stderr(&pda);

    let mut summaries = Vec::with_capacity(4);
    for (mi, _) in ALL_METHODS.iter().enumerate() {
        let mut per_weight = Vec::with_capacity(weights.len());
        for (wi, w) in weights.iter().enumerate() {
            let aucs: Vec<f64> = results.iter().map(|r| r.baseline_aucs[mi][wi]).collect();
            let (mean, se) = mean_stderr(&aucs);
            per_weight.push(WeightAuc { weights: w.clone(), mean_auc: mean, stderr: se });
        }
        summaries.push(summarize_method(per_weight));
    }
    let klpe = summaries.pop().unwrap();
    let lof = summaries.pop().unwrap();
    let knn_sum = summaries.pop().unwrap();
    let knn_dist = summaries.pop().unwrap();

    let details: Vec<RunDetail> = results
        .iter()
        .enumerate()
        .map(|(run, r)| RunDetail {
            run,
            pda_auc: r.pda_auc,
            baseline_median: std::array::from_fn(|mi| median(&r.baseline_aucs[mi])),
            baseline_best: std::array::from_fn(|mi| {
                r.baseline_aucs[mi].iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            }),
        })
        .collect();

    let report = ExperimentReport {
        runs: cfg.runs,
        seed: cfg.seed,
        grid_points: cfg.grid_points,
        stderr_defined: cfg.runs > 1,
        pda_mean_auc: pda_mean,
        pda_stderr,
        knn_dist,
        knn_sum,
        lof,
        klpe,
    };
    Ok((report, details))
}

fn simulate_run(cfg: &SimConfig, run: usize, weights: &[Vec<f64>]) -> Result<RunResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(run as u64);

    // Training set: nominal distribution only.
    let train_rows: Vec<Vec<f64>> =
        (0..cfg.n_train).map(|_| (0..cfg.dim).map(|_| rng.random()).collect()).collect();

    // Test set: categorical class draw, then the feature draws. Anomalous
    // class c shifts coordinate c into [shift_low, shift_high].
    let mut test_rows = Vec::with_capacity(cfg.n_test);
    let mut labels = Vec::with_capacity(cfg.n_test);
    for _ in 0..cfg.n_test {
        let u: f64 = rng.random();
        let class = if u < cfg.class_prob * cfg.dim as f64 {
            Some((u / cfg.class_prob) as usize)
        } else {
            None
        };
        let row: Vec<f64> = (0..cfg.dim)
            .map(|d| {
                let v: f64 = rng.random();
                if class == Some(d) {
                    cfg.shift_low + v * (cfg.shift_high - cfg.shift_low)
                } else {
                    v
                }
            })
            .collect();
        test_rows.push(row);
        labels.push(class.is_some());
    }

    let dataset = Dataset::from_rows(train_rows)?;
    let criteria: Vec<CriterionSpec> =
        (0..cfg.dim).map(|dim| CriterionSpec::SquaredDiffDim { dim }).collect();

    // Per-criterion dissimilarities between each test sample and the
    // training set, shared by the detector and every baseline weight.
    let model = PdaModel::train_with(
        dataset,
        criteria,
        &TrainOptions { nds: cfg.nds, k_override: None },
    )?;
    let test_dissims: Vec<Vec<Vec<f64>>> = test_rows
        .iter()
        .map(|row| model.test_dissims(&Sample::new(row.clone())?))
        .collect::<Result<_>>()?;

    let pda_scores: Vec<f64> = test_dissims
        .iter()
        .map(|d| Ok(model.score_from_dissims(d, 0.0)?.score))
        .collect::<Result<Vec<f64>>>()?;
    let pda_auc = split_auc(&pda_scores, &labels)?;

    let mut baseline_aucs: [Vec<f64>; 4] = std::array::from_fn(|_| Vec::with_capacity(weights.len()));
    for w in weights {
        let scalarized = scalarize(model.matrices(), w)?;
        let scorer = BaselineScorer::fit(&scalarized, cfg.baseline_k)?;
        let mut scores: [Vec<f64>; 4] = std::array::from_fn(|_| Vec::with_capacity(cfg.n_test));
        for dissims in &test_dissims {
            let x_dists = scalarize_rows(dissims, w);
            for (mi, method) in ALL_METHODS.iter().enumerate() {
                scores[mi].push(scorer.score(*method, &x_dists)?);
            }
        }
        for mi in 0..4 {
            baseline_aucs[mi].push(split_auc(&scores[mi], &labels)?);
        }
    }

    Ok(RunResult { pda_auc, baseline_aucs })
}

/// AUC from a score list and anomaly labels.
pub fn split_auc(scores: &[f64], labels: &[bool]) -> Result<f64> {
    let nominal: Vec<f64> =
        scores.iter().zip(labels).filter(|(_, &l)| !l).map(|(&s, _)| s).collect();
    let anomalous: Vec<f64> =
        scores.iter().zip(labels).filter(|(_, &l)| l).map(|(&s, _)| s).collect();
    Ok(auc(&nominal, &anomalous)?.auc)
}

fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

fn summarize_method(per_weight: Vec<WeightAuc>) -> MethodSummary {
    let mut order: Vec<usize> = (0..per_weight.len()).collect();
    order.sort_by(|&a, &b| {
        per_weight[a]
            .mean_auc
            .partial_cmp(&per_weight[b].mean_auc)
            .unwrap()
            .then(a.cmp(&b))
    });
    let n = order.len();
    let best = &per_weight[*order.last().unwrap()];
    let (median_auc, median_stderr) = if n % 2 == 1 {
        let m = &per_weight[order[n / 2]];
        (m.mean_auc, m.stderr)
    } else {
        let a = &per_weight[order[n / 2 - 1]];
        let b = &per_weight[order[n / 2]];
        ((a.mean_auc + b.mean_auc) / 2.0, (a.stderr + b.stderr) / 2.0)
    };
    MethodSummary {
        median_auc,
        median_stderr,
        best_auc: best.mean_auc,
        best_stderr: best.stderr,
        best_weights: best.weights.clone(),
        per_weight,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn auc_perfect_separation() {
        let r = auc(&[1.0, 2.0], &[3.0, 4.0]).unwrap();
        assert_eq!(r.auc, 1.0);
        assert_eq!(*r.points.first().unwrap(), (0.0, 0.0));
        assert_eq!(*r.points.last().unwrap(), (1.0, 1.0));
    }

    #[test]
    fn auc_all_ties_is_half() {
        let r = auc(&[5.0, 5.0, 5.0], &[5.0, 5.0]).unwrap();
        assert_eq!(r.auc, 0.5);
    }

    #[test]
    fn auc_enumerated_pairs() {
        // nominal {1,2}, anomalous {1.5,3}: wins 3 of 4 pairs.
        let r = auc(&[1.0, 2.0], &[1.5, 3.0]).unwrap();
        assert_eq!(r.auc, 0.75);
    }

    #[test]
    fn auc_rejects_empty_class() {
        assert!(auc(&[], &[1.0]).is_err());
        assert!(auc(&[1.0], &[]).is_err());
    }

    #[test]
    fn roc_points_are_monotone() {
        let r = auc(&[0.1, 0.4, 0.4, 0.9], &[0.3, 0.4, 1.2]).unwrap();
        for w in r.points.windows(2) {
            assert!(w[1].0 >= w[0].0);
            assert!(w[1].1 >= w[0].1);
        }
    }

    #[test]
    fn trapezoid_equals_mann_whitney() {
        let nominal = [0.2, 0.5, 0.5, 0.7, 1.1];
        let anomalous = [0.5, 0.9, 1.1, 2.0];
        let a = auc(&nominal, &anomalous).unwrap().auc;
        let b = mann_whitney_auc(&nominal, &anomalous).unwrap();
        assert!((a - b).abs() <= 1e-12);
    }

    #[test]
    fn label_swap_symmetry() {
        let a = [0.3, 0.9, 0.4];
        let b = [0.5, 0.1];
        let x = auc(&a, &b).unwrap().auc;
        let y = auc(&b, &a).unwrap().auc;
        assert!((x + y - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn single_run_has_zero_stderr_and_flag() {
        let cfg = SimConfig {
            runs: 1,
            n_train: 30,
            n_test: 40,
            grid_points: 2,
            seed: 7,
            ..Default::default()
        };
        let report = run_simulation(&cfg).unwrap();
        assert!(!report.stderr_defined);
        assert_eq!(report.pda_stderr, 0.0);
    }

    #[test]
    fn far_shifted_anomalies_are_trivially_separable() {
        // The rank-proxy score saturates at 1.0, so a nominal test point
        // whose k-NN distance exceeds every training resubstitution
        // distance would tie with the anomalies; this seeded instance is
        // tie-free.
        let cfg = SimConfig {
            runs: 2,
            seed: 3,
            grid_points: 2,
            n_train: 150,
            n_test: 40,
            shift_low: 10.0,
            shift_high: 10.1,
            ..Default::default()
        };
        let report = run_simulation(&cfg).unwrap();
        assert!(report.pda_mean_auc >= 0.999, "pda {}", report.pda_mean_auc);
        for m in ALL_METHODS {
            let s = report.baseline(m);
            assert!(s.best_auc >= 0.999, "{m} best {}", s.best_auc);
        }
    }

    #[test]
    fn simulation_is_deterministic() {
        let cfg = SimConfig {
            runs: 3,
            seed: 5,
            grid_points: 2,
            n_train: 40,
            n_test: 30,
            ..Default::default()
        };
        let (r1, d1) = run_simulation_detailed(&cfg).unwrap();
        let (r2, d2) = run_simulation_detailed(&cfg).unwrap();
        assert_eq!(
            serde_json::to_string(&r1).unwrap(),
            serde_json::to_string(&r2).unwrap()
        );
        assert_eq!(
            serde_json::to_string(&d1).unwrap(),
            serde_json::to_string(&d2).unwrap()
        );
    }
}
