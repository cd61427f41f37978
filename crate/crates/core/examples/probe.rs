// Scratch calibration probe; removed before release.
use std::time::Instant;

use pareto_depth::eval::{run_simulation, SimConfig};
use pareto_depth::theory::{box_dyad_experiment, diamond_dyad_experiment, dyad_count_grid, FitSummary};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let what = args.get(1).map(String::as_str).unwrap_or("sim");
    match what {
        "sim" => {
            let runs: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(5);
            let t = Instant::now();
            let cfg = SimConfig { runs, seed: 42, ..Default::default() };
            let r = run_simulation(&cfg).unwrap();
            println!("runs={runs} elapsed={:?}", t.elapsed());
            println!("pda  {:.4} ± {:.4}", r.pda_mean_auc, r.pda_stderr);
            for (name, s) in [("knn_dist", &r.knn_dist), ("knn_sum", &r.knn_sum), ("lof", &r.lof), ("klpe", &r.klpe)] {
                println!("{name:8} median {:.4} ± {:.4}  best {:.4} ± {:.4}", s.median_auc, s.median_stderr, s.best_auc, s.best_stderr);
            }
        }
        "box" => {
            let trials: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(50);
            let nmax: usize = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(1_000_000);
            let t = Instant::now();
            let grid = dyad_count_grid(1000, nmax, 8).unwrap();
            println!("grid {grid:?}");
            let run = box_dyad_experiment(&grid, trials, 7).unwrap();
            println!("elapsed={:?}", t.elapsed());
            for row in &run.rows {
                println!("n={:8} F={:7.3}±{:.3} L={:7.3}±{:.3} F-L={:6.3}±{:.3}", row.n, row.mean_front, row.se_front, row.mean_scalarized, row.se_scalarized, row.mean_unattained, row.se_unattained);
            }
            println!("{:?}", run.fit);
        }
        "diamond" => {
            let trials: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(50);
            let nmax: usize = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(1_000_000);
            let t = Instant::now();
            let grid = dyad_count_grid(1000, nmax, 8).unwrap();
            let run = diamond_dyad_experiment(&grid, trials, 7).unwrap();
            println!("elapsed={:?}", t.elapsed());
            for row in &run.rows {
                println!("n={:8} F={:9.3} L={:8.3} F-L={:8.3}±{:.3}", row.n, row.mean_front, row.mean_scalarized, row.mean_unattained, row.se_unattained);
            }
            if let FitSummary::PowerLaw { alpha, beta, residual_rms } = run.fit {
                println!("alpha={alpha:.4} beta={beta:.4} resid={residual_rms:.4}");
            }
        }
        _ => eprintln!("unknown probe"),
    }
}
