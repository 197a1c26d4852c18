//! Wall-clock timing of the counting pipeline on random regular graphs.

use std::time::{Duration, Instant};

use subcount_core::generators::random_regular;
use subcount_core::{CountError, CountingPlan, Executor, Substructure};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchRow {
    pub nodes: usize,
    pub edges: usize,
    pub extraction: Duration,
    pub message_passing: Duration,
    pub readout: Duration,
}

impl BenchRow {
    pub fn total(&self) -> Duration {
        self.extraction + self.message_passing + self.readout
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub kind: Substructure,
    pub sizes: Vec<usize>,
    pub degree: usize,
    pub repeats: usize,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            kind: Substructure::Cycle6,
            sizes: vec![1000, 2000, 4000],
            degree: 4,
            repeats: 3,
            seed: 0,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Generate(#[from] subcount_core::generators::GenError),
    #[error(transparent)]
    Count(#[from] CountError),
}

/// Times each size, keeping the fastest of `repeats` runs.
pub fn run_bench<E: Executor>(cfg: &BenchConfig, exec: &E) -> Result<Vec<BenchRow>, BenchError> {
    let plan = CountingPlan::new(cfg.kind, None)?;
    let mut rows = Vec::new();
    for &n in &cfg.sizes {
        let g = random_regular(n, cfg.degree, cfg.seed)?;
        let mut best: Option<BenchRow> = None;
        for _ in 0..cfg.repeats.max(1) {
            let t = Instant::now();
            let bag = plan.extract(&g, exec)?;
            let extraction = t.elapsed();
            let t = Instant::now();
            let states = plan.run(&bag, exec)?;
            let message_passing = t.elapsed();
            let t = Instant::now();
            plan.readout(&bag, &states)?;
            let readout = t.elapsed();
            let row = BenchRow {
                nodes: n,
                edges: g.edge_count(),
                extraction,
                message_passing,
                readout,
            };
            if best.is_none_or(|b| row.total() < b.total()) {
                best = Some(row);
            }
        }
        rows.push(best.expect("at least one repeat"));
    }
    Ok(rows)
}

/// Total-time ratio between each row and the previous one.
pub fn growth_ratios(rows: &[BenchRow]) -> Vec<f64> {
    rows.windows(2)
        .map(|w| w[1].total().as_secs_f64() / w[0].total().as_secs_f64().max(1e-9))
        .collect()
}
