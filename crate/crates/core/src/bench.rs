//! Wall-clock scaling of graph construction and the longest-path pass.

use std::fmt::Write as _;
use std::time::Instant;

use crate::gate_model::Degree;
use crate::graph::build_graph;
use crate::random::{random_necklace, seeded_rng, NecklaceSpec};
use crate::scheduler::longest_paths;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub trials: usize,
    pub frame_size: usize,
    pub degree_max: Degree,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub n_strings: usize,
    pub mean_ms_build: f64,
    pub mean_ms_dp: f64,
    /// Fastest single build, less sensitive to scheduling noise than the mean.
    pub min_ms_build: f64,
    pub min_ms_dp: f64,
    pub mean_edges: f64,
    /// `mean_ms_build` over the previous row's.
    pub ratio: Option<f64>,
}

/// Times `trials` random necklaces per size, in the order given.
pub fn run_bench(config: &BenchConfig) -> Vec<BenchRow> {
    assert!(config.trials >= 1, "at least one trial");
    let mut rng = seeded_rng(config.seed);
    let mut rows: Vec<BenchRow> = Vec::with_capacity(config.sizes.len());
    for &n in &config.sizes {
        let spec = NecklaceSpec {
            frame_size: config.frame_size,
            strings: n,
            degree_max: config.degree_max,
        };
        let (mut build, mut dp) = (Vec::new(), Vec::new());
        let mut edges = 0usize;
        for _ in 0..config.trials {
            let necklace = random_necklace(&mut rng, spec);
            let t0 = Instant::now();
            let graph = build_graph(&necklace);
            let t1 = Instant::now();
            let paths = longest_paths(&graph);
            let t2 = Instant::now();
            std::hint::black_box(paths.total());
            edges += graph.edge_count();
            build.push((t1 - t0).as_secs_f64() * 1e3);
            dp.push((t2 - t1).as_secs_f64() * 1e3);
        }
        let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
        let min = |v: &[f64]| v.iter().copied().fold(f64::INFINITY, f64::min);
        let mean_ms_build = mean(&build);
        let ratio = rows.last().map(|prev| mean_ms_build / prev.mean_ms_build);
        rows.push(BenchRow {
            n_strings: n,
            mean_ms_build,
            mean_ms_dp: mean(&dp),
            min_ms_build: min(&build),
            min_ms_dp: min(&dp),
            mean_edges: edges as f64 / config.trials as f64,
            ratio,
        });
    }
    rows
}

/// `n_strings,mean_ms_build,mean_ms_dp,ratio` with an empty ratio on the first row.
pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("n_strings,mean_ms_build,mean_ms_dp,ratio\n");
    for r in rows {
        let ratio = r.ratio.map(|x| format!("{x:.3}")).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{:.4},{:.4},{}",
            r.n_strings, r.mean_ms_build, r.mean_ms_dp, ratio
        );
    }
    out
}
