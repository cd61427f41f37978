//! `pda`: train and apply the Pareto-depth anomaly detector, run the
//! scalarized baselines, reproduce the simulated experiment, and validate
//! the front growth laws. All randomness flows from `--seed`; outputs are
//! written atomically and embed tool version, seed, and a config digest.

mod ops;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pareto_depth::Error;

#[derive(Parser, Debug)]
#[command(name = "pda", version, about = "Multi-criteria anomaly detection via Pareto depth analysis")]
struct Cli {
    /// Cap on internal parallelism (default: available cores). Results
    /// do not depend on this value.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Train a detector from a CSV dataset and a criteria config.
    Train(TrainArgs),
    /// Score test samples with a trained model.
    Score(ScoreArgs),
    /// Grid-search a scalarized baseline and report one AUC per weight
    /// vector.
    Baseline(BaselineArgs),
    /// Run the simulated four-criteria experiment (detector vs all
    /// baselines over the weight grid).
    Simulate(SimulateArgs),
    /// Monte-Carlo growth statistics of first Pareto fronts.
    Theory(TheoryArgs),
    /// Benchmark the non-dominated sorting routines on random points.
    SortBench(SortBenchArgs),
}

#[derive(Args, Debug)]
struct CsvInputArgs {
    /// Field delimiter for CSV inputs.
    #[arg(long, default_value = ",")]
    delimiter: char,
    /// Header handling: auto-sniff by default.
    #[arg(long, value_parser = ["auto", "yes", "no"], default_value = "auto")]
    header: String,
}

#[derive(Args, Debug)]
struct TrainArgs {
    /// Training dataset CSV: one sample per row, numeric columns.
    #[arg(long)]
    input: PathBuf,
    /// Criteria config (JSON list).
    #[arg(long)]
    criteria: PathBuf,
    /// Output model file.
    #[arg(long)]
    out: PathBuf,
    /// Sorting routine for front construction.
    #[arg(long, value_parser = ["auto", "fast2d", "deb", "peel"], default_value = "auto")]
    nds: String,
    /// Per-criterion neighbor-count overrides (comma-separated), instead
    /// of the connectivity heuristic.
    #[arg(long, value_delimiter = ',')]
    k: Option<Vec<usize>>,
    #[command(flatten)]
    csv: CsvInputArgs,
}

#[derive(Args, Debug)]
struct ScoreArgs {
    /// Trained model file.
    #[arg(long)]
    model: PathBuf,
    /// Test samples CSV.
    #[arg(long)]
    input: PathBuf,
    /// Anomaly threshold sigma: declared anomalous when score > sigma.
    #[arg(long)]
    threshold: f64,
    /// Output scores CSV (sample_index, score, depths_json, is_anomaly).
    #[arg(long)]
    out: PathBuf,
    /// Depth query: the exact front scan, the approximate front
    /// bisection, or the insertion depth.
    #[arg(long, value_parser = ["exact", "bisect", "insertion"], default_value = "exact")]
    depth_query: String,
    #[command(flatten)]
    csv: CsvInputArgs,
}

#[derive(Args, Debug)]
struct BaselineArgs {
    /// Baseline method.
    #[arg(long, value_parser = ["knn_dist", "knn_sum", "lof", "klpe"])]
    method: String,
    /// Training dataset CSV.
    #[arg(long)]
    input: PathBuf,
    /// Labeled test CSV; the label column holds 0 (nominal) or 1
    /// (anomalous).
    #[arg(long)]
    test: PathBuf,
    /// 0-based index of the label column in the test CSV (default:
    /// last column).
    #[arg(long)]
    label_col: Option<usize>,
    /// Criteria config (JSON list).
    #[arg(long)]
    criteria: PathBuf,
    /// Weight-grid density per criterion axis.
    #[arg(long, default_value_t = 6)]
    weights_grid: usize,
    /// Fixed neighbor count; default derives k per weight vector from
    /// k-NN-graph connectivity.
    #[arg(long)]
    k: Option<usize>,
    /// Output CSV: one AUC row per weight vector.
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    csv: CsvInputArgs,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long, default_value_t = 100)]
    runs: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Weight-grid density per criterion axis.
    #[arg(long, default_value_t = 6)]
    grid: usize,
    /// Output report (JSON).
    #[arg(long)]
    out: PathBuf,
    /// Optional companion CSV of per-run AUCs.
    #[arg(long)]
    runs_csv: Option<PathBuf>,
    /// Fixed baseline neighbor count; default uses the connectivity
    /// heuristic per weight vector.
    #[arg(long)]
    baseline_k: Option<usize>,
}

#[derive(Args, Debug)]
struct TheoryArgs {
    /// Sampling domain: box and diamond build dyads over pairs of
    /// uniform planar samples; uniform draws i.i.d. points directly.
    #[arg(long, value_parser = ["box", "diamond", "uniform"])]
    domain: String,
    #[arg(long, default_value_t = 1000.0)]
    n_min: f64,
    #[arg(long, default_value_t = 1e6)]
    n_max: f64,
    /// Number of grid points between n_min and n_max (log-spaced).
    #[arg(long, default_value_t = 8)]
    grid_points: usize,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Output CSV of per-n growth statistics.
    #[arg(long)]
    out: PathBuf,
    /// Fit summary JSON (default: `<out>` with extension `.fit.json`).
    #[arg(long)]
    fit_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SortBenchArgs {
    /// Number of random points.
    #[arg(long, default_value_t = 100_000)]
    n: usize,
    /// Point dimension (criteria count).
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Comma-separated routines: fast2d, deb, peel.
    #[arg(long, value_delimiter = ',', default_values_t = vec!["fast2d".to_string(), "deb".to_string()])]
    algo: Vec<String>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Output CSV (algo, n, k, millis, fronts). The timing column is
    /// informational; the front counts are deterministic.
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) =
            rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()
        {
            eprintln!("pda: failed to configure thread pool: {e}");
            return ExitCode::from(1);
        }
    }
    let result = match &cli.command {
        Command::Train(args) => ops::train(args),
        Command::Score(args) => ops::score(args),
        Command::Baseline(args) => ops::baseline(args),
        Command::Simulate(args) => ops::simulate(args),
        Command::Theory(args) => ops::theory(args),
        Command::SortBench(args) => ops::sort_bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pda: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// 2 for usage/configuration/schema problems, 1 for runtime failures.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Usage(_) | Error::Config(_) | Error::Csv(_) | Error::Json(_) | Error::Model(_) => 2,
        Error::Io(io) => match io.kind() {
            std::io::ErrorKind::NotFound | std::io::ErrorKind::PermissionDenied => 2,
            _ => 1,
        },
    }
}
