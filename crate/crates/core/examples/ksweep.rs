// Scratch calibration probe; removed before release.
use std::time::Instant;
use pareto_depth::eval::{run_simulation, SimConfig};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let runs: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(40);
    let t = Instant::now();
    let cfg = SimConfig { runs, seed: 42, grid_points: 2, ..Default::default() };
    let r = run_simulation(&cfg).unwrap();
    println!("runs={runs} elapsed={:?}", t.elapsed());
    println!("pda  {:.4} ± {:.4}", r.pda_mean_auc, r.pda_stderr);
    println!("knn best(of 15w) {:.4}  lof best {:.4}", r.knn_dist.best_auc, r.lof.best_auc);
}
