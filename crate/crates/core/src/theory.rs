//! Monte-Carlo validation of first-front statistics: how large the first
//! Pareto front is, how much of it linear scalarization can reach, and
//! how the unattainable remainder grows with sample count.
//!
//! Two dyad domains are studied over uniform samples in the unit square:
//! the box domain (criteria |dx|, |dy|), where the unattainable count
//! grows logarithmically, and the diamond domain (criteria |dx| + |dy|,
//! |dx| - |dy|), where it grows like sqrt(n). An i.i.d. control draws
//! points directly from the unit square; its expected first-front size
//! has an exact integral form used as a quadrature oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};
use crate::nds::{first_front, PointSet};

/// Which point distribution a growth experiment samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    /// Dyads (|dx|, |dy|) of uniform planar samples; n must be a
    /// triangular number C(N, 2).
    Box,
    /// Dyads (|dx| + |dy|, |dx| - |dy|); the second coordinate may be
    /// negative.
    Diamond,
    /// n i.i.d. points uniform on the unit square.
    Uniform,
}

impl std::str::FromStr for Domain {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "box" => Ok(Self::Box),
            "diamond" => Ok(Self::Diamond),
            "uniform" => Ok(Self::Uniform),
            other => Err(usage(format!("unknown domain {other:?}"))),
        }
    }
}

/// Sample means (with standard errors) at one grid point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GrowthRow {
    pub n: usize,
    /// |F|: first-front size.
    pub mean_front: f64,
    pub se_front: f64,
    /// |L|: points attainable by positive linear scalarization.
    pub mean_scalarized: f64,
    pub se_scalarized: f64,
    /// |F \ L|: scalarization's blind spot.
    pub mean_unattained: f64,
    pub se_unattained: f64,
}

/// Fitted growth law for the unattained count.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum FitSummary {
    /// y = alpha * ln n; `mean_ratio` is the plain average of y / ln n,
    /// reported as a diagnostic alongside the least-squares alpha.
    LogGrowth { alpha: f64, mean_ratio: f64, residual_rms: f64 },
    /// y = alpha * n^beta, fitted by least squares on (ln n, ln y).
    PowerLaw { alpha: f64, beta: f64, residual_rms: f64 },
}

/// A complete experiment: the grid, per-n statistics, and the fit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TheoryRun {
    pub domain: Domain,
    pub n_grid: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub rows: Vec<GrowthRow>,
    pub fit: FitSummary,
}

/// The subset of a two-criteria first front attainable as the minimizer
/// of some strictly positive weight vector: the points on the lower-left
/// convex hull chain, including points lying exactly on hull edges (tied
/// minimizers for the edge's normal weights). Returns ascending indices
/// into the input.
pub fn scalarization_set(front: PointSet) -> Result<Vec<usize>> {
    if front.dim() != 2 {
        return Err(usage("scalarization set is implemented for two criteria"));
    }
    if front.is_empty() {
        return Err(usage("scalarization set of an empty front is undefined"));
    }
    let n = front.len();
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_unstable_by(|&a, &b| {
        front
            .point(a as usize)
            .partial_cmp(front.point(b as usize))
            .unwrap()
            .then(a.cmp(&b))
    });

    // Deduplicate exact coordinate ties and check the staircase shape a
    // mutually non-dominated set must have.
    let mut unique: Vec<(f64, f64, usize)> = Vec::with_capacity(n); // (x, y, first order pos)
    for (pos, &i) in order.iter().enumerate() {
        let p = front.point(i as usize);
        match unique.last() {
            Some(&(x, y, _)) if x == p[0] && y == p[1] => {}
            Some(&(x, y, _)) => {
                if p[0] <= x || p[1] >= y {
                    return Err(usage("input is not a mutually non-dominated front"));
                }
                unique.push((p[0], p[1], pos));
            }
            None => unique.push((p[0], p[1], pos)),
        }
    }

    // Lower-left hull chain, keeping collinear points (they tie the
    // minimum for the edge's normal weight vector).
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| -> f64 {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut chain: Vec<usize> = Vec::with_capacity(unique.len()); // indices into `unique`
    for (ui, &(x, y, _)) in unique.iter().enumerate() {
        while chain.len() >= 2 {
            let o = unique[chain[chain.len() - 2]];
            let a = unique[chain[chain.len() - 1]];
            if cross((o.0, o.1), (a.0, a.1), (x, y)) < 0.0 {
                chain.pop();
            } else {
                break;
            }
        }
        chain.push(ui);
    }

    let mut out: Vec<usize> = Vec::new();
    for &ui in &chain {
        let (x, y, start) = unique[ui];
        // All duplicates of a hull point are tied minimizers.
        for &i in order[start..].iter() {
            let p = front.point(i as usize);
            if p[0] == x && p[1] == y {
                out.push(i as usize);
            } else {
                break;
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Expected first-front size of n i.i.d. uniform points on the unit
/// square, by nested adaptive quadrature of
/// n * integral over [0,1]^2 of (1 - x y)^(n-1), to relative error well
/// below 1e-6.
pub fn lemma1_quadrature(n: usize) -> f64 {
    assert!(n >= 1, "quadrature needs n >= 1");
    let e = n as i32 - 1;
    let inner = |x: f64| adaptive_simpson(&|y: f64| (1.0 - x * y).powi(e), 0.0, 1.0, 1e-13);
    let integral = adaptive_simpson(&inner, 0.0, 1.0, 1e-11);
    n as f64 * integral
}

fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, eps: f64) -> f64 {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, eps, 48)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        left + right + delta / 15.0
    } else {
        simpson_step(f, a, m, fa, flm, fm, left, eps * 0.5, depth - 1)
            + simpson_step(f, m, b, fm, frm, fb, right, eps * 0.5, depth - 1)
    }
}

/// Number of planar samples generating exactly `n` dyads, if any.
pub fn samples_for_dyad_count(n: usize) -> Option<usize> {
    let disc = 8u128 * n as u128 + 1;
    let s = (disc as f64).sqrt() as u128;
    let s = [s.saturating_sub(1), s, s + 1]
        .into_iter()
        .find(|c| c * c == disc)?;
    if (1 + s) % 2 == 0 {
        Some(((1 + s) / 2) as usize)
    } else {
        None
    }
}

/// A grid of dyad counts C(N, 2) that are approximately log-spaced over
/// [n_min, n_max].
pub fn dyad_count_grid(n_min: usize, n_max: usize, points: usize) -> Result<Vec<usize>> {
    let targets = log_spaced(n_min, n_max, points)?;
    let mut out: Vec<usize> = targets
        .into_iter()
        .map(|t| {
            let n_samples = ((1.0 + (1.0 + 8.0 * t as f64).sqrt()) / 2.0).round().max(2.0);
            let n_samples = n_samples as usize;
            n_samples * (n_samples - 1) / 2
        })
        .collect();
    out.dedup();
    Ok(out)
}

/// Log-spaced integer grid, deduplicated and ascending.
pub fn log_spaced(n_min: usize, n_max: usize, points: usize) -> Result<Vec<usize>> {
    if n_min < 1 || n_max < n_min || points < 1 {
        return Err(usage("grid needs 1 <= n_min <= n_max and at least one point"));
    }
    if points == 1 || n_min == n_max {
        return Ok(vec![n_max]);
    }
    let (lo, hi) = ((n_min as f64).ln(), (n_max as f64).ln());
    let mut out: Vec<usize> = (0..points)
        .map(|i| (lo + (hi - lo) * i as f64 / (points - 1) as f64).exp().round() as usize)
        .map(|n| n.max(1))
        .collect();
    out.dedup();
    Ok(out)
}

/// Box-domain dyad experiment: the grid must consist of dyad counts
/// C(N, 2). Fits y = alpha * ln n to the unattained count.
pub fn box_dyad_experiment(n_grid: &[usize], trials: usize, seed: u64) -> Result<TheoryRun> {
    run_experiment(Domain::Box, n_grid, trials, seed)
}

/// Diamond-domain dyad experiment; fits y = alpha * n^beta.
pub fn diamond_dyad_experiment(n_grid: &[usize], trials: usize, seed: u64) -> Result<TheoryRun> {
    run_experiment(Domain::Diamond, n_grid, trials, seed)
}

/// i.i.d. uniform control on the unit square (no dyads).
pub fn uniform_experiment(n_grid: &[usize], trials: usize, seed: u64) -> Result<TheoryRun> {
    run_experiment(Domain::Uniform, n_grid, trials, seed)
}

pub fn run_experiment(
    domain: Domain,
    n_grid: &[usize],
    trials: usize,
    seed: u64,
) -> Result<TheoryRun> {
    if n_grid.is_empty() || trials == 0 {
        return Err(usage("experiment needs a nonempty grid and at least one trial"));
    }
    for &n in n_grid {
        if n == 0 {
            return Err(usage("grid entries must be positive"));
        }
        if matches!(domain, Domain::Box | Domain::Diamond)
            && samples_for_dyad_count(n).is_none()
        {
            return Err(usage(format!(
                "dyad count {n} is not achievable as C(N, 2) for integer N"
            )));
        }
    }

    // One RNG stream per (grid point, trial), derived from the seed by a
    // flat counter: reproducible regardless of scheduling.
    let jobs: Vec<(usize, usize)> = (0..n_grid.len())
        .flat_map(|gi| (0..trials).map(move |t| (gi, t)))
        .collect();
    let counts: Vec<(usize, usize)> = jobs
        .par_iter()
        .map(|&(gi, trial)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream((gi * trials + trial) as u64);
            front_counts(domain, n_grid[gi], &mut rng)
        })
        .collect::<Result<_>>()?;

    let mut rows = Vec::with_capacity(n_grid.len());
    for (gi, &n) in n_grid.iter().enumerate() {
        let slice = &counts[gi * trials..(gi + 1) * trials];
        let f: Vec<f64> = slice.iter().map(|c| c.0 as f64).collect();
        let l: Vec<f64> = slice.iter().map(|c| c.1 as f64).collect();
        let fl: Vec<f64> = slice.iter().map(|c| (c.0 - c.1) as f64).collect();
        let (mean_front, se_front) = mean_stderr(&f);
        let (mean_scalarized, se_scalarized) = mean_stderr(&l);
        let (mean_unattained, se_unattained) = mean_stderr(&fl);
        rows.push(GrowthRow {
            n,
            mean_front,
            se_front,
            mean_scalarized,
            se_scalarized,
            mean_unattained,
            se_unattained,
        });
    }

    let fit = match domain {
        Domain::Box | Domain::Uniform => fit_log_growth(&rows),
        Domain::Diamond => fit_power_law(&rows),
    };
    Ok(TheoryRun { domain, n_grid: n_grid.to_vec(), trials, seed, rows, fit })
}

/// (|F|, |L|) of one sampled instance.
fn front_counts(domain: Domain, n: usize, rng: &mut ChaCha8Rng) -> Result<(usize, usize)> {
    let buf: Vec<f64> = match domain {
        Domain::Uniform => (0..2 * n).map(|_| rng.random()).collect(),
        Domain::Box | Domain::Diamond => {
            let n_samples = samples_for_dyad_count(n).expect("validated grid");
            let xs: Vec<f64> = (0..n_samples).map(|_| rng.random()).collect();
            let ys: Vec<f64> = (0..n_samples).map(|_| rng.random()).collect();
            let mut buf = Vec::with_capacity(2 * n);
            for i in 0..n_samples {
                for j in (i + 1)..n_samples {
                    let dx = (xs[i] - xs[j]).abs();
                    let dy = (ys[i] - ys[j]).abs();
                    match domain {
                        Domain::Box => {
                            buf.push(dx);
                            buf.push(dy);
                        }
                        Domain::Diamond => {
                            buf.push(dx + dy);
                            buf.push(dx - dy);
                        }
                        Domain::Uniform => unreachable!(),
                    }
                }
            }
            buf
        }
    };
    let points = PointSet::new(&buf, 2)?;
    let front_idx = first_front(points)?;
    let mut front_buf = Vec::with_capacity(front_idx.len() * 2);
    for &i in &front_idx {
        front_buf.extend_from_slice(points.point(i));
    }
    let l = scalarization_set(PointSet::new(&front_buf, 2)?)?;
    Ok((front_idx.len(), l.len()))
}

/// Least-squares alpha for y = alpha * ln n (no intercept), plus the
/// plain mean of y / ln n. Rows with ln n == 0 are excluded.
fn fit_log_growth(rows: &[GrowthRow]) -> FitSummary {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.n >= 2)
        .map(|r| ((r.n as f64).ln(), r.mean_unattained))
        .collect();
    if pts.is_empty() {
        return FitSummary::LogGrowth { alpha: 0.0, mean_ratio: 0.0, residual_rms: 0.0 };
    }
    let st2: f64 = pts.iter().map(|(t, _)| t * t).sum();
    let sty: f64 = pts.iter().map(|(t, y)| t * y).sum();
    let alpha = sty / st2;
    let mean_ratio = pts.iter().map(|(t, y)| y / t).sum::<f64>() / pts.len() as f64;
    let residual_rms = (pts.iter().map(|(t, y)| (y - alpha * t).powi(2)).sum::<f64>()
        / pts.len() as f64)
        .sqrt();
    FitSummary::LogGrowth { alpha, mean_ratio, residual_rms }
}

/// Least squares on (ln n, ln y) for y = alpha * n^beta. Rows with
/// nonpositive y are excluded.
fn fit_power_law(rows: &[GrowthRow]) -> FitSummary {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.mean_unattained > 0.0)
        .map(|r| ((r.n as f64).ln(), r.mean_unattained.ln()))
        .collect();
    if pts.len() < 2 {
        return FitSummary::PowerLaw { alpha: 0.0, beta: 0.0, residual_rms: 0.0 };
    }
    let n = pts.len() as f64;
    let mt = pts.iter().map(|(t, _)| t).sum::<f64>() / n;
    let my = pts.iter().map(|(_, y)| y).sum::<f64>() / n;
    let cov: f64 = pts.iter().map(|(t, y)| (t - mt) * (y - my)).sum();
    let var: f64 = pts.iter().map(|(t, _)| (t - mt).powi(2)).sum();
    let beta = cov / var;
    let intercept = my - beta * mt;
    let residual_rms = (pts
        .iter()
        .map(|(t, y)| (y - intercept - beta * t).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    FitSummary::PowerLaw { alpha: intercept.exp(), beta, residual_rms }
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

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(values: &[f64]) -> PointSet<'_> {
        PointSet::new(values, 2).unwrap()
    }

    #[test]
    fn strictly_convex_front_is_fully_attainable() {
        let l = scalarization_set(pts(&[0.0, 3.0, 1.0, 1.0, 3.0, 0.0])).unwrap();
        assert_eq!(l, vec![0, 1, 2]);
    }

    #[test]
    fn point_above_chord_is_unattainable() {
        let l = scalarization_set(pts(&[0.0, 3.0, 2.0, 2.5, 3.0, 0.0])).unwrap();
        assert_eq!(l, vec![0, 2]);
    }

    #[test]
    fn singleton_front_is_its_own_set() {
        assert_eq!(scalarization_set(pts(&[4.0, 4.0])).unwrap(), vec![0]);
    }

    #[test]
    fn collinear_edge_points_are_tied_minimizers() {
        let l = scalarization_set(pts(&[0.0, 2.0, 1.0, 1.0, 2.0, 0.0])).unwrap();
        assert_eq!(l, vec![0, 1, 2]);
    }

    #[test]
    fn duplicate_hull_points_are_all_included() {
        let l = scalarization_set(pts(&[0.0, 3.0, 0.0, 3.0, 3.0, 0.0])).unwrap();
        assert_eq!(l, vec![0, 1, 2]);
    }

    #[test]
    fn convex_four_point_front_has_empty_blind_spot() {
        let values = [0.0, 6.0, 1.0, 3.0, 3.0, 1.0, 6.0, 0.0];
        let l = scalarization_set(pts(&values)).unwrap();
        assert_eq!(l.len(), 4);
    }

    #[test]
    fn dominated_input_is_rejected() {
        assert!(scalarization_set(pts(&[0.0, 0.0, 1.0, 1.0])).is_err());
    }

    #[test]
    fn quadrature_small_n_closed_forms() {
        // n = 1: integrand is identically 1.
        assert!((lemma1_quadrature(1) - 1.0).abs() < 1e-9);
        // n = 2: 2 * (1 - 1/4) = 1.5.
        assert!((lemma1_quadrature(2) - 1.5).abs() < 1e-9);
    }

    #[test]
    fn quadrature_matches_harmonic_numbers() {
        // For uniform box samples the expected first-front size reduces
        // analytically to the n-th harmonic number; the quadrature must
        // reproduce it without knowing the reduction.
        for n in [3usize, 10, 137, 1000] {
            let h: f64 = (1..=n).map(|k| 1.0 / k as f64).sum();
            let q = lemma1_quadrature(n);
            assert!((q - h).abs() / h < 1e-6, "n = {n}: {q} vs H_n = {h}");
        }
    }

    #[test]
    fn triangular_number_inversion() {
        assert_eq!(samples_for_dyad_count(1), Some(2));
        assert_eq!(samples_for_dyad_count(3), Some(3));
        assert_eq!(samples_for_dyad_count(990), Some(45));
        assert_eq!(samples_for_dyad_count(2), None);
        assert_eq!(samples_for_dyad_count(100), None);
    }

    #[test]
    fn dyad_grid_is_triangular_and_sorted() {
        let grid = dyad_count_grid(1000, 1_000_000, 8).unwrap();
        assert!(grid.len() >= 6);
        assert!(grid.windows(2).all(|w| w[0] < w[1]));
        assert!(grid.iter().all(|&n| samples_for_dyad_count(n).is_some()));
    }

    #[test]
    fn single_dyad_experiment() {
        let run = box_dyad_experiment(&[1], 3, 9).unwrap();
        let row = &run.rows[0];
        assert_eq!(row.mean_front, 1.0);
        assert_eq!(row.mean_scalarized, 1.0);
        assert_eq!(row.mean_unattained, 0.0);
    }

    #[test]
    fn non_triangular_grid_rejected() {
        assert!(box_dyad_experiment(&[100], 2, 1).is_err());
        assert!(uniform_experiment(&[100], 2, 1).is_ok());
    }

    #[test]
    fn log_fit_recovers_exact_law() {
        let rows: Vec<GrowthRow> = [100usize, 1000, 10000]
            .iter()
            .map(|&n| GrowthRow {
                n,
                mean_front: 0.0,
                se_front: 0.0,
                mean_scalarized: 0.0,
                se_scalarized: 0.0,
                mean_unattained: 0.5 * (n as f64).ln(),
                se_unattained: 0.0,
            })
            .collect();
        match fit_log_growth(&rows) {
            FitSummary::LogGrowth { alpha, mean_ratio, residual_rms } => {
                assert!((alpha - 0.5).abs() < 1e-12);
                assert!((mean_ratio - 0.5).abs() < 1e-12);
                assert!(residual_rms < 1e-12);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn power_fit_recovers_exact_law() {
        let rows: Vec<GrowthRow> = [100usize, 1000, 10000]
            .iter()
            .map(|&n| GrowthRow {
                n,
                mean_front: 0.0,
                se_front: 0.0,
                mean_scalarized: 0.0,
                se_scalarized: 0.0,
                mean_unattained: 2.0 * (n as f64).powf(0.5),
                se_unattained: 0.0,
            })
            .collect();
        match fit_power_law(&rows) {
            FitSummary::PowerLaw { alpha, beta, residual_rms } => {
                assert!((alpha - 2.0).abs() < 1e-9);
                assert!((beta - 0.5).abs() < 1e-12);
                assert!(residual_rms < 1e-12);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn experiment_is_deterministic() {
        let a = uniform_experiment(&[50, 100], 5, 3).unwrap();
        let b = uniform_experiment(&[50, 100], 5, 3).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn scalarized_never_exceeds_front() {
        let run = uniform_experiment(&[200], 20, 17).unwrap();
        let row = &run.rows[0];
        assert!(row.mean_scalarized <= row.mean_front);
        assert!(row.mean_unattained >= 0.0);
    }
}
