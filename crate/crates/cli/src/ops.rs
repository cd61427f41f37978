//! Subcommand implementations.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pareto_depth::baselines::{grid_weights, scalarize, scalarize_rows, BaselineMethod, BaselineScorer};
use pareto_depth::dissim::read_criteria_path;
use pareto_depth::error::{Error, Result};
use pareto_depth::eval::{run_simulation_detailed, split_auc, SimConfig};
use pareto_depth::nds::{nds_fast_2d, nds_general, nds_peel, PointSet};
use pareto_depth::pairwise_matrix;
use pareto_depth::theory::{self, Domain, FitSummary, TheoryRun};
use pareto_depth::{CsvOptions, Dataset, DepthQuery, NdsAlgo, PdaModel, Sample, TrainOptions};

use crate::output::{check_output_path, write_atomic, Meta};
use crate::{BaselineArgs, CsvInputArgs, ScoreArgs, SimulateArgs, SortBenchArgs, TheoryArgs, TrainArgs};

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

fn csv_options(args: &CsvInputArgs) -> Result<CsvOptions> {
    if !args.delimiter.is_ascii() {
        return Err(usage("delimiter must be a single ASCII character"));
    }
    let has_header = match args.header.as_str() {
        "auto" => None,
        "yes" => Some(true),
        "no" => Some(false),
        _ => unreachable!("clap validates"),
    };
    Ok(CsvOptions { delimiter: args.delimiter as u8, has_header })
}

fn check_input(path: &Path) -> Result<()> {
    if !path.is_file() {
        return Err(Error::Io(std::io::Error::new(
            std::io::ErrorKind::NotFound,
            format!("input file {} does not exist", path.display()),
        )));
    }
    Ok(())
}

fn nds_algo(name: &str) -> NdsAlgo {
    match name {
        "fast2d" => NdsAlgo::Fast2d,
        "deb" => NdsAlgo::General,
        "peel" => NdsAlgo::Peel,
        _ => NdsAlgo::Auto,
    }
}

pub fn train(args: &TrainArgs) -> Result<()> {
    check_input(&args.input)?;
    check_input(&args.criteria)?;
    check_output_path(&args.out)?;
    let meta = Meta::new(None, args);

    let dataset = Dataset::from_csv_path(&args.input, csv_options(&args.csv)?)?;
    let criteria = read_criteria_path(&args.criteria)?;
    let opts = TrainOptions { nds: nds_algo(&args.nds), k_override: args.k.clone() };
    let model = PdaModel::train_with(dataset, criteria, &opts)?;

    let mut meta_map = serde_json::Map::new();
    meta_map.insert("tool".into(), meta.tool.clone().into());
    meta_map.insert("version".into(), meta.version.clone().into());
    meta_map.insert("config_digest".into(), meta.config_digest.clone().into());
    let mut buf = Vec::new();
    model.save_with_meta(&mut buf, meta_map)?;
    write_atomic(&args.out, &buf)?;

    println!(
        "trained: {} samples, {} criteria, {} dyads, {} fronts, k = {:?}",
        model.dataset().len(),
        model.criteria().len(),
        model.dyads().len(),
        model.num_fronts(),
        model.k()
    );
    Ok(())
}

pub fn score(args: &ScoreArgs) -> Result<()> {
    check_input(&args.model)?;
    check_input(&args.input)?;
    check_output_path(&args.out)?;
    let meta = Meta::new(None, args);

    let model = PdaModel::load_path(&args.model)?;
    let tests = Dataset::from_csv_path(&args.input, csv_options(&args.csv)?)?;
    let query = match args.depth_query.as_str() {
        "bisect" => DepthQuery::FrontBisect,
        "insertion" => DepthQuery::Insertion,
        _ => DepthQuery::ExactScan,
    };

    let mut out = meta.csv_header();
    out.push_str("sample_index,score,depths_json,is_anomaly\n");
    let mut n_anomalies = 0usize;
    for i in 0..tests.len() {
        let sample = Sample::new(tests.sample(i).to_vec())?;
        let report = model.score_with(&sample, args.threshold, query)?;
        let depths = serde_json::to_string(&report.depths)?;
        n_anomalies += report.is_anomaly as usize;
        let _ = writeln!(
            out,
            "{i},{},\"{}\",{}",
            report.score,
            depths.replace('"', "\"\""),
            report.is_anomaly
        );
    }
    write_atomic(&args.out, out.as_bytes())?;
    println!(
        "scored {} samples against {} fronts: {} above sigma = {}",
        tests.len(),
        model.num_fronts(),
        n_anomalies,
        args.threshold
    );
    Ok(())
}

/// Splits a labeled CSV into features and 0/1 labels.
fn read_labeled(
    path: &Path,
    opts: CsvOptions,
    label_col: Option<usize>,
) -> Result<(Dataset, Vec<bool>)> {
    let raw = Dataset::from_csv_path(path, opts)?;
    let cols = raw.dim();
    if cols < 2 {
        return Err(usage("labeled test data needs at least one feature and a label column"));
    }
    let label_col = label_col.unwrap_or(cols - 1);
    if label_col >= cols {
        return Err(usage(format!("label column {label_col} out of range ({cols} columns)")));
    }
    let mut rows = Vec::with_capacity(raw.len());
    let mut labels = Vec::with_capacity(raw.len());
    for i in 0..raw.len() {
        let row = raw.sample(i);
        let label = row[label_col];
        if label != 0.0 && label != 1.0 {
            return Err(usage(format!("row {i}: label must be 0 or 1, got {label}")));
        }
        labels.push(label == 1.0);
        rows.push(
            row.iter()
                .enumerate()
                .filter(|&(c, _)| c != label_col)
                .map(|(_, &v)| v)
                .collect(),
        );
    }
    Ok((Dataset::from_rows(rows)?, labels))
}

pub fn baseline(args: &BaselineArgs) -> Result<()> {
    check_input(&args.input)?;
    check_input(&args.test)?;
    check_input(&args.criteria)?;
    check_output_path(&args.out)?;
    if args.weights_grid < 2 {
        return Err(usage("--weights-grid must be at least 2"));
    }
    let meta = Meta::new(None, args);

    let opts = csv_options(&args.csv)?;
    let method: BaselineMethod = args.method.parse()?;
    let train = Dataset::from_csv_path(&args.input, opts)?;
    let (tests, labels) = read_labeled(&args.test, opts, args.label_col)?;
    if tests.dim() != train.dim() {
        return Err(usage(format!(
            "test features ({}) do not match training features ({})",
            tests.dim(),
            train.dim()
        )));
    }
    let criteria = read_criteria_path(&args.criteria)?;
    let matrices: Vec<_> =
        criteria.iter().map(|c| pairwise_matrix(&train, c)).collect::<Result<_>>()?;

    // Per-criterion dissimilarities between each test sample and the
    // training set, scalarized per weight vector below.
    let test_rows: Vec<Vec<Vec<f64>>> = (0..tests.len())
        .map(|i| {
            criteria
                .iter()
                .map(|c| {
                    train
                        .iter()
                        .map(|s| c.evaluate_vectors(tests.sample(i), s))
                        .collect()
                })
                .collect()
        })
        .collect();

    let weights = grid_weights(criteria.len(), args.weights_grid);
    let mut out = meta.csv_header();
    let mut header = String::new();
    for l in 1..=criteria.len() {
        let _ = write!(header, "weight_{l},");
    }
    let _ = writeln!(out, "{header}k,auc");
    for w in &weights {
        let scalarized = scalarize(&matrices, w)?;
        let scorer = BaselineScorer::fit(&scalarized, args.k)?;
        let scores: Vec<f64> = test_rows
            .iter()
            .map(|rows| scorer.score(method, &scalarize_rows(rows, w)))
            .collect::<Result<_>>()?;
        let auc = split_auc(&scores, &labels)?;
        let mut line = String::new();
        for v in w {
            let _ = write!(line, "{v},");
        }
        let _ = writeln!(out, "{line}{},{auc}", scorer.k());
    }
    write_atomic(&args.out, out.as_bytes())?;
    println!("wrote {} weight rows for {method}", weights.len());
    Ok(())
}

pub fn simulate(args: &SimulateArgs) -> Result<()> {
    check_output_path(&args.out)?;
    if let Some(csv) = &args.runs_csv {
        check_output_path(csv)?;
    }
    let meta = Meta::new(Some(args.seed), args);
    let cfg = SimConfig {
        runs: args.runs,
        seed: args.seed,
        grid_points: args.grid,
        baseline_k: args.baseline_k,
        ..Default::default()
    };
    let (report, details) = run_simulation_detailed(&cfg)?;

    #[derive(serde::Serialize)]
    struct ReportFile<'a> {
        meta: &'a Meta,
        #[serde(flatten)]
        report: &'a pareto_depth::eval::ExperimentReport,
    }
    let json = serde_json::to_vec_pretty(&ReportFile { meta: &meta, report: &report })?;
    write_atomic(&args.out, &json)?;

    if let Some(csv_path) = &args.runs_csv {
        let mut out = meta.csv_header();
        out.push_str(
            "run,pda_auc,knn_dist_median,knn_dist_best,knn_sum_median,knn_sum_best,\
             lof_median,lof_best,klpe_median,klpe_best\n",
        );
        for d in &details {
            let _ = write!(out, "{},{}", d.run, d.pda_auc);
            for m in 0..4 {
                let _ = write!(out, ",{},{}", d.baseline_median[m], d.baseline_best[m]);
            }
            out.push('\n');
        }
        write_atomic(csv_path, out.as_bytes())?;
    }

    println!(
        "simulate: runs={} pda={:.4}±{:.4} | best-weight means: knn_dist={:.4} knn_sum={:.4} lof={:.4} klpe={:.4}",
        report.runs,
        report.pda_mean_auc,
        report.pda_stderr,
        report.knn_dist.best_auc,
        report.knn_sum.best_auc,
        report.lof.best_auc,
        report.klpe.best_auc
    );
    Ok(())
}

pub fn theory(args: &TheoryArgs) -> Result<()> {
    check_output_path(&args.out)?;
    let fit_out = args
        .fit_out
        .clone()
        .unwrap_or_else(|| args.out.with_extension("fit.json"));
    check_output_path(&fit_out)?;
    if args.n_min < 1.0 || args.n_max < args.n_min {
        return Err(usage("need 1 <= n_min <= n_max"));
    }
    let meta = Meta::new(Some(args.seed), args);

    let domain: Domain = args.domain.parse()?;
    let (n_min, n_max) = (args.n_min.round() as usize, args.n_max.round() as usize);
    let grid = match domain {
        Domain::Box | Domain::Diamond => theory::dyad_count_grid(n_min, n_max, args.grid_points)?,
        Domain::Uniform => theory::log_spaced(n_min, n_max, args.grid_points)?,
    };
    let run = theory::run_experiment(domain, &grid, args.trials, args.seed)?;

    let mut out = meta.csv_header();
    let quad = matches!(domain, Domain::Uniform);
    out.push_str("n,mean_front,se_front,mean_scalarized,se_scalarized,mean_unattained,se_unattained");
    if quad {
        out.push_str(",expected_front_quadrature");
    }
    out.push('\n');
    for row in &run.rows {
        let _ = write!(
            out,
            "{},{},{},{},{},{},{}",
            row.n,
            row.mean_front,
            row.se_front,
            row.mean_scalarized,
            row.se_scalarized,
            row.mean_unattained,
            row.se_unattained
        );
        if quad {
            let _ = write!(out, ",{}", theory::lemma1_quadrature(row.n));
        }
        out.push('\n');
    }
    write_atomic(&args.out, out.as_bytes())?;

    #[derive(serde::Serialize)]
    struct FitFile<'a> {
        meta: &'a Meta,
        #[serde(flatten)]
        run: &'a TheoryRun,
    }
    let json = serde_json::to_vec_pretty(&FitFile { meta: &meta, run: &run })?;
    write_atomic(&fit_out, &json)?;

    match &run.fit {
        FitSummary::LogGrowth { alpha, mean_ratio, residual_rms } => println!(
            "theory {}: alpha = {alpha:.4} (mean ratio {mean_ratio:.4}, residual {residual_rms:.4})",
            args.domain
        ),
        FitSummary::PowerLaw { alpha, beta, residual_rms } => println!(
            "theory {}: alpha = {alpha:.4}, beta = {beta:.4} (residual {residual_rms:.4})",
            args.domain
        ),
    }
    Ok(())
}

pub fn sort_bench(args: &SortBenchArgs) -> Result<()> {
    check_output_path(&args.out)?;
    if args.n == 0 || args.k == 0 {
        return Err(usage("--n and --k must be positive"));
    }
    let meta = Meta::new(Some(args.seed), args);

    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let values: Vec<f64> = (0..args.n * args.k).map(|_| rng.random()).collect();
    let points = PointSet::new(&values, args.k)?;

    let mut out = meta.csv_header();
    out.push_str("algo,n,k,millis,fronts\n");
    for algo in &args.algo {
        let started = Instant::now();
        let fronts = match algo.as_str() {
            "fast2d" => nds_fast_2d(points)?,
            "deb" => nds_general(points)?,
            "peel" => nds_peel(points)?,
            other => return Err(usage(format!("unknown sorting routine {other:?}"))),
        };
        let millis = started.elapsed().as_secs_f64() * 1e3;
        let _ = writeln!(out, "{algo},{},{},{millis:.3},{}", args.n, args.k, fronts.num_fronts());
        println!("{algo}: {} fronts in {millis:.1} ms", fronts.num_fronts());
    }
    write_atomic(&args.out, out.as_bytes())?;
    Ok(())
}

