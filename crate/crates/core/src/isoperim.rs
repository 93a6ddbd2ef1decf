//! Quantitative machinery for regions far from the disk: the isoperimetric
//! ratio, the height-partition upper bound on `p(S)`, and the ratio threshold
//! beyond which the disk provably wins.
//!
//! Framed so its longest chord is the unit segment, a convex region of height
//! `h̄` splits into `N = ⌊1/(2h̄)⌋` equal-area vertical slabs, each wider than
//! tall; three points in pairwise non-adjacent distinct slabs always form an
//! obtuse triangle, so `1 - p(S) ≥ (N-4)(N-3)(N-2)/N³`. The bound beats the
//! disk exactly when that count exceeds `9/8 - 4/π²`, which happens for
//! `N ≥ 30`, i.e. for isoperimetric ratio above `7688/15`.

use alloc::vec::Vec;

use crate::disk;
use crate::error::{Error, Result};
use crate::estimator::{self, Estimate};
use crate::math;
use crate::region::{ConvexRegion, FramedRegion};

/// Isoperimetric ratio threshold `7688/15 ≈ 512.53` of the main theorem.
pub fn iso_ratio_threshold() -> f64 {
    7688.0 / 15.0
}

/// `perimeter² / area`; at least `4π`, with equality only for the disk.
pub fn iso_ratio(region: &ConvexRegion) -> Result<f64> {
    let area = region.area()?;
    let perimeter = region.perimeter()?;
    if !(area.is_finite() && area > 0.0) {
        return Err(Error::InvalidRegion("degenerate region".into()));
    }
    Ok(perimeter * perimeter / area)
}

#[derive(Clone, Copy, Debug)]
pub struct IsoBoundReport {
    /// perimeter²/area
    pub ratio: f64,
    /// supremum of heights in the longest-chord frame
    pub hbar: f64,
    /// number of equal-area slabs, `⌊1/(2 h̄)⌋`
    pub n_parts: u64,
    /// lower bound on the non-acute probability
    pub nonacute_lb: f64,
    /// upper bound on p(S)
    pub p_upper: f64,
    /// whether the bound already beats the disk value
    pub beats_disk: bool,
}

/// Height-partition bound for a framed region.
pub fn partition_bound(framed: &FramedRegion) -> Result<IsoBoundReport> {
    let ratio = iso_ratio(&framed.region)?;
    let hbar = framed.height_profile(512)?.hbar;
    let n_parts = if hbar > 0.0 {
        // h̄ carries ~1e-12 of numerical error; nudge so exact-boundary
        // cases (1/(2h̄) an integer) round to the intended count
        let parts = 1.0 / (2.0 * hbar);
        math::floor(parts * (1.0 + 1e-9)) as u64
    } else {
        0
    };
    let nonacute_lb = if n_parts >= 4 {
        let n = n_parts as f64;
        (n - 4.0) * (n - 3.0) * (n - 2.0) / (n * n * n)
    } else {
        0.0
    };
    let p_upper = 1.0 - nonacute_lb;
    Ok(IsoBoundReport {
        ratio,
        hbar,
        n_parts,
        nonacute_lb,
        p_upper,
        beats_disk: p_upper < disk::p_disk(),
    })
}

/// `true` iff the isoperimetric ratio exceeds `7688/15`. Callers may then
/// rely on `partition_bound(...).beats_disk` (the implication is tested, not
/// assumed).
pub fn threshold_check(framed: &FramedRegion) -> Result<bool> {
    Ok(iso_ratio(&framed.region)? > iso_ratio_threshold())
}

/// One rung of the thin-rectangle decay ladder.
#[derive(Clone, Debug)]
pub struct LadderPoint {
    pub height: f64,
    pub ratio: f64,
    pub p_mc: Estimate,
    pub p_upper: f64,
}

/// Monte Carlo decay ladder over `1×h` rectangles.
pub fn decay_ladder(heights: &[f64], n_samples: u64, seed: u64) -> Result<Vec<LadderPoint>> {
    heights
        .iter()
        .map(|&h| decay_ladder_point(h, n_samples, seed))
        .collect()
}

/// A single ladder rung, exposed separately so drivers can parallelize.
pub fn decay_ladder_point(height: f64, n_samples: u64, seed: u64) -> Result<LadderPoint> {
    let rect = ConvexRegion::rectangle(1.0, height)?;
    let framed = rect.longest_segment_frame()?;
    let report = partition_bound(&framed)?;
    let p_mc = estimator::estimate_p(&rect, n_samples, seed)?;
    Ok(LadderPoint {
        height,
        ratio: report.ratio,
        p_mc,
        p_upper: report.p_upper,
    })
}

/// Least-squares slope of `log p` against `log R` over the ladder.
pub fn loglog_slope(points: &[LadderPoint]) -> f64 {
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for pt in points {
        let x = math::ln(pt.ratio);
        let y = math::ln(pt.p_mc.value);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}
