//! Parallel drivers over the core chunk/slice APIs.
//!
//! The core crate fixes the chunk decomposition and the reduction order;
//! these drivers only distribute chunk evaluation over a thread pool and then
//! reduce in chunk order, so every result is bit-identical to the serial path
//! regardless of thread count.

use std::time::Instant;

use acuteprob_core::error::Result;
use acuteprob_core::estimator::{self, CdfEstimate, Estimate};
use acuteprob_core::quadp::QuadPlan;
use acuteprob_core::region::ConvexRegion;
use acuteprob_core::variation::PEvaluator;
use rayon::prelude::*;
use rayon::ThreadPool;

/// Threads to use: `--threads` beats `ACUTEPROB_THREADS` beats all cores.
pub fn effective_threads(cli_threads: Option<usize>) -> usize {
    cli_threads
        .or_else(|| {
            std::env::var("ACUTEPROB_THREADS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .filter(|&t| t >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}

pub fn build_pool(threads: usize) -> ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .expect("thread pool")
}

pub fn estimate_p(
    pool: &ThreadPool,
    region: &ConvexRegion,
    n_samples: u64,
    seed: u64,
) -> Result<Estimate> {
    let start = Instant::now();
    let chunks = estimator::plan_chunks(n_samples);
    let counts: Result<Vec<_>> = pool.install(|| {
        chunks
            .par_iter()
            .map(|&chunk| estimator::run_chunk(region, chunk, seed))
            .collect()
    });
    let mut estimate = estimator::reduce_counts(counts?, seed)?;
    estimate.wall_time = start.elapsed().as_secs_f64();
    Ok(estimate)
}

pub fn estimate_f(
    pool: &ThreadPool,
    region: &ConvexRegion,
    phi_grid: &[f64],
    n_samples: u64,
    seed: u64,
) -> Result<CdfEstimate> {
    estimator::validate_phi_grid(phi_grid)?;
    let chunks = estimator::plan_chunks(n_samples);
    let counts: Result<Vec<_>> = pool.install(|| {
        chunks
            .par_iter()
            .map(|&chunk| estimator::run_chunk_cdf(region, chunk, seed, phi_grid))
            .collect()
    });
    estimator::reduce_cdf_counts(phi_grid, counts?, seed)
}

pub fn quadrature_p(pool: &ThreadPool, region: &ConvexRegion, resolution: u32) -> Result<f64> {
    let plan = QuadPlan::new(region, resolution)?;
    let partials: Vec<f64> = pool.install(|| {
        (0..plan.n_slices())
            .into_par_iter()
            .map(|slice| plan.eval_slice(slice))
            .collect()
    });
    Ok(plan.combine(partials))
}

/// Quadrature evaluator for homotopy traces, parallel over plan slices.
pub struct ParallelQuadEval<'p> {
    pub pool: &'p ThreadPool,
    pub resolution: u32,
}

impl PEvaluator for ParallelQuadEval<'_> {
    fn eval_p(&self, region: &ConvexRegion) -> Result<Estimate> {
        let value = quadrature_p(self.pool, region, self.resolution)?;
        Ok(Estimate {
            value,
            std_err: 0.0,
            n_samples: 0,
            seed: 0,
            wall_time: 0.0,
        })
    }

    fn error_scale(&self) -> f64 {
        2e-6 / self.resolution as f64
    }
}

/// Monte Carlo evaluator for homotopy traces, parallel over chunks, common
/// seed across grid points.
pub struct ParallelMcEval<'p> {
    pub pool: &'p ThreadPool,
    pub n_samples: u64,
    pub seed: u64,
}

impl PEvaluator for ParallelMcEval<'_> {
    fn eval_p(&self, region: &ConvexRegion) -> Result<Estimate> {
        estimate_p(self.pool, region, self.n_samples, self.seed)
    }

    fn error_scale(&self) -> f64 {
        0.5 / (self.n_samples as f64).sqrt()
    }
}
