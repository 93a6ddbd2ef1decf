//! Monte Carlo estimation of `p(S)` and of the largest-angle CDF `F_S(φ)`.
//!
//! # Determinism contract
//!
//! The triple stream is partitioned into fixed-size chunks indexed by chunk
//! number; chunk `c` derives its RNG stream from `(seed, c)` alone and results
//! are reduced in chunk order. Running the chunks in any interleaving (or on
//! any number of threads) therefore produces bit-identical estimates. The
//! serial drivers here iterate chunks in order; the CLI crate maps the same
//! chunks over a thread pool.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geom::{Point2, Point3};
use crate::math;
use crate::region::ConvexRegion;
use crate::rng::Rng;
use crate::triangle;

/// Triples per chunk. Fixed: part of the determinism contract.
pub const CHUNK_SIZE: u64 = 1 << 16;

/// Rejection-loop cap per sample; hitting it signals an invalid region.
const MAX_REJECTIONS: u64 = 1_000_000;

/// A Monte Carlo result.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub std_err: f64,
    pub n_samples: u64,
    pub seed: u64,
    /// Wall-clock seconds, filled by drivers that can measure time
    /// (zero from the `no_std` serial path).
    pub wall_time: f64,
}

impl Estimate {
    fn from_counts(hits: u64, n: u64, seed: u64) -> Estimate {
        let value = hits as f64 / n as f64;
        Estimate {
            value,
            std_err: math::sqrt(value * (1.0 - value) / n as f64),
            n_samples: n,
            seed,
            wall_time: 0.0,
        }
    }
}

/// Largest-angle CDF sampled on a φ grid (shared triples per grid).
#[derive(Clone, Debug)]
pub struct CdfEstimate {
    pub phi_grid: Vec<f64>,
    pub values: Vec<Estimate>,
}

/// One chunk of work: triples `[start, start + len)` of the stream.
#[derive(Clone, Copy, Debug)]
pub struct ChunkSpec {
    pub index: u64,
    pub len: u64,
}

/// Chunk decomposition of an `n`-triple run.
pub fn plan_chunks(n_samples: u64) -> Vec<ChunkSpec> {
    let mut chunks = Vec::new();
    let mut remaining = n_samples;
    let mut index = 0;
    while remaining > 0 {
        let len = remaining.min(CHUNK_SIZE);
        chunks.push(ChunkSpec { index, len });
        remaining -= len;
        index += 1;
    }
    chunks
}

/// Acute counts for one chunk.
#[derive(Clone, Copy, Debug, Default)]
pub struct ChunkCounts {
    pub n: u64,
    pub acute: u64,
}

/// Per-chunk cumulative counts of `largest angle ≤ φ_i`.
#[derive(Clone, Debug)]
pub struct CdfChunkCounts {
    pub n: u64,
    pub le_counts: Vec<u64>,
}

/// Draw one uniform point from a planar region by rejection from its
/// bounding box (polygons use exact fan-triangulation instead, which keeps
/// thin or rotated polygons efficient).
pub fn sample_point2(region: &ConvexRegion, rng: &mut Rng) -> Result<Point2> {
    if let ConvexRegion::Polygon { vertices } = region {
        return Ok(sample_polygon(vertices, rng));
    }
    let (lo, hi) = region.bounding_half_width()?;
    for _ in 0..MAX_REJECTIONS {
        let p = Point2::new(rng.uniform_in(lo.x, hi.x), rng.uniform_in(lo.y, hi.y));
        if region.contains(p) {
            return Ok(p);
        }
    }
    Err(Error::InvalidRegion(
        "rejection sampling exceeded the retry cap".into(),
    ))
}

/// Uniform point in a convex polygon: pick a fan triangle by area, then a
/// uniform point inside it.
fn sample_polygon(vertices: &[Point2], rng: &mut Rng) -> Point2 {
    let n = vertices.len();
    let anchor = vertices[0];
    // cumulative fan-triangle areas
    let mut total = 0.0;
    let mut areas = Vec::with_capacity(n - 2);
    for i in 1..n - 1 {
        let a = vertices[i].sub(anchor);
        let b = vertices[i + 1].sub(anchor);
        total += 0.5 * a.cross(b);
        areas.push(total);
    }
    let target = rng.uniform() * total;
    let mut tri = n - 3;
    for (i, &cum) in areas.iter().enumerate() {
        if target <= cum {
            tri = i;
            break;
        }
    }
    let b = vertices[tri + 1];
    let c = vertices[tri + 2];
    let mut u = rng.uniform();
    let mut v = rng.uniform();
    if u + v > 1.0 {
        u = 1.0 - u;
        v = 1.0 - v;
    }
    Point2::new(
        anchor.x + u * (b.x - anchor.x) + v * (c.x - anchor.x),
        anchor.y + u * (b.y - anchor.y) + v * (c.y - anchor.y),
    )
}

/// Draw one uniform point from a 3-D region by rejection from its bounding cube.
pub fn sample_point3(region: &ConvexRegion, rng: &mut Rng) -> Result<Point3> {
    let r_max = match region {
        ConvexRegion::Ball3 { radius } => *radius,
        ConvexRegion::PerturbedBall3 { .. } => {
            let mut r_max = 0.0_f64;
            for i in 0..32 {
                let theta = math::PI * (i as f64 + 0.5) / 32.0;
                for j in 0..64 {
                    let phi = math::TAU * j as f64 / 64.0;
                    r_max = r_max.max(region.ball_radial(theta, phi));
                }
            }
            r_max * (1.0 + 1e-6)
        }
        _ => {
            return Err(Error::Unsupported(
                "3-D sampling requires a 3-D region".into(),
            ))
        }
    };
    for _ in 0..MAX_REJECTIONS {
        let p = Point3::new(
            rng.uniform_in(-r_max, r_max),
            rng.uniform_in(-r_max, r_max),
            rng.uniform_in(-r_max, r_max),
        );
        if region.contains3(p) {
            return Ok(p);
        }
    }
    Err(Error::InvalidRegion(
        "rejection sampling exceeded the retry cap".into(),
    ))
}

fn triple_class(region: &ConvexRegion, rng: &mut Rng) -> Result<triangle::TriangleClass> {
    if region.is_planar() {
        let p1 = sample_point2(region, rng)?;
        let p2 = sample_point2(region, rng)?;
        let p3 = sample_point2(region, rng)?;
        Ok(triangle::classify_triangle(
            p1,
            p2,
            p3,
            triangle::DEFAULT_ANGLE_TOL,
        ))
    } else {
        let p1 = sample_point3(region, rng)?;
        let p2 = sample_point3(region, rng)?;
        let p3 = sample_point3(region, rng)?;
        Ok(triangle::classify_triangle_3d(
            p1,
            p2,
            p3,
            triangle::DEFAULT_ANGLE_TOL,
        ))
    }
}

/// Acute count over one chunk of the triple stream.
pub fn run_chunk(region: &ConvexRegion, chunk: ChunkSpec, seed: u64) -> Result<ChunkCounts> {
    let mut rng = Rng::from_seed_stream(seed, chunk.index);
    let mut acute = 0;
    for _ in 0..chunk.len {
        if triple_class(region, &mut rng)?.is_acute() {
            acute += 1;
        }
    }
    Ok(ChunkCounts {
        n: chunk.len,
        acute,
    })
}

/// Cumulative largest-angle counts over one chunk, sharing the same triple
/// stream as [`run_chunk`] (same seed ⇒ same triples).
pub fn run_chunk_cdf(
    region: &ConvexRegion,
    chunk: ChunkSpec,
    seed: u64,
    phi_grid: &[f64],
) -> Result<CdfChunkCounts> {
    let mut rng = Rng::from_seed_stream(seed, chunk.index);
    let mut le_counts = alloc::vec![0u64; phi_grid.len()];
    for _ in 0..chunk.len {
        let largest = triple_class(region, &mut rng)?.largest_angle_or_flat();
        // first grid point with φ ≥ largest; counts are made cumulative later
        let idx = phi_grid.partition_point(|&phi| phi < largest);
        if idx < phi_grid.len() {
            le_counts[idx] += 1;
        }
    }
    Ok(CdfChunkCounts {
        n: chunk.len,
        le_counts,
    })
}

/// Fold chunk counts in chunk order into an [`Estimate`].
pub fn reduce_counts(counts: impl IntoIterator<Item = ChunkCounts>, seed: u64) -> Result<Estimate> {
    let mut n = 0;
    let mut acute = 0;
    for c in counts {
        n += c.n;
        acute += c.acute;
    }
    if n == 0 {
        return Err(Error::InvalidArgument("need at least 1 sample".into()));
    }
    Ok(Estimate::from_counts(acute, n, seed))
}

/// Fold CDF chunk counts (in chunk order) into a [`CdfEstimate`].
pub fn reduce_cdf_counts(
    phi_grid: &[f64],
    counts: impl IntoIterator<Item = CdfChunkCounts>,
    seed: u64,
) -> Result<CdfEstimate> {
    let mut n = 0;
    let mut bins = alloc::vec![0u64; phi_grid.len()];
    for c in counts {
        n += c.n;
        for (b, v) in bins.iter_mut().zip(&c.le_counts) {
            *b += v;
        }
    }
    if n == 0 {
        return Err(Error::InvalidArgument("need at least 1 sample".into()));
    }
    let mut cumulative = 0;
    let values = bins
        .iter()
        .map(|&b| {
            cumulative += b;
            Estimate::from_counts(cumulative, n, seed)
        })
        .collect();
    Ok(CdfEstimate {
        phi_grid: phi_grid.to_vec(),
        values,
    })
}

/// Serial Monte Carlo estimate of `p(region)`.
pub fn estimate_p(region: &ConvexRegion, n_samples: u64, seed: u64) -> Result<Estimate> {
    if n_samples == 0 {
        return Err(Error::InvalidArgument("need at least 1 sample".into()));
    }
    let chunks = plan_chunks(n_samples);
    let mut acc = Vec::with_capacity(chunks.len());
    for chunk in chunks {
        acc.push(run_chunk(region, chunk, seed)?);
    }
    reduce_counts(acc, seed)
}

/// Serial Monte Carlo estimate of `F_S(φ)` on a sorted grid in `[π/3, π]`.
pub fn estimate_f(
    region: &ConvexRegion,
    phi_grid: &[f64],
    n_samples: u64,
    seed: u64,
) -> Result<CdfEstimate> {
    validate_phi_grid(phi_grid)?;
    if n_samples == 0 {
        return Err(Error::InvalidArgument("need at least 1 sample".into()));
    }
    let chunks = plan_chunks(n_samples);
    let mut acc = Vec::with_capacity(chunks.len());
    for chunk in chunks {
        acc.push(run_chunk_cdf(region, chunk, seed, phi_grid)?);
    }
    reduce_cdf_counts(phi_grid, acc, seed)
}

pub fn validate_phi_grid(phi_grid: &[f64]) -> Result<()> {
    if phi_grid.is_empty() {
        return Err(Error::InvalidArgument("φ grid must be nonempty".into()));
    }
    let mut prev = f64::NEG_INFINITY;
    for &phi in phi_grid {
        if !(phi.is_finite() && phi >= math::PI / 3.0 - 1e-12 && phi <= math::PI + 1e-12) {
            return Err(Error::InvalidArgument(
                "φ grid values must lie in [π/3, π]".into(),
            ));
        }
        if phi < prev {
            return Err(Error::InvalidArgument("φ grid must be sorted".into()));
        }
        prev = phi;
    }
    Ok(())
}
