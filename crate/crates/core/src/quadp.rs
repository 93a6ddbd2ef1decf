//! Reduced-dimension quadrature for `p(S)` on planar regions.
//!
//! `p(S) = (1/V³) ∬_{S×S} Φ(X, Y) dX dY`, where `Φ` is the acute-locus area
//! of the third vertex: strip between the two perpendiculars minus the
//! Thales-circle lens, intersected with `S`. The outer integral runs over a
//! tensor rule in polar coordinates (uniform midpoint angles × Gauss radii);
//! the inner area is closed form for the disk and polygons and uses
//! Newton-refined boundary crossings with exact Green-theorem arc integrals
//! for smooth radial regions.
//!
//! Regions are canonicalized first (centroid at the origin, area π), which
//! costs nothing — `p` is congruence- and scale-invariant — and makes the
//! computed value exactly invariant under translations and dilations of the
//! input. The near-diagonal `X ≈ Y` is excised by a guard band of width
//! `1e-4`; its contribution is `O(guard³)`.
//!
//! Work is split into slices with a fixed reduction order, so the parallel
//! drivers in the CLI crate reproduce the serial result bit for bit.

use alloc::vec::Vec;

use crate::disk;
use crate::error::{Error, Result};
use crate::fourier::FourierSeries;
use crate::geom::{self, Point2};
use crate::math;
use crate::quad::GaussRule;
use crate::region::{CapArc, ConvexRegion, RadialGeometry};

/// Guard band around the degenerate diagonal `X = Y`.
const DIAGONAL_GUARD: f64 = 1e-4;

/// Default resolution used when callers do not override it.
pub const DEFAULT_RESOLUTION: u32 = 2;

enum Engine {
    /// Unit disk: closed-form acute locus.
    Disk,
    /// Smooth star-shaped boundary.
    Radial(RadialShape),
    /// Convex polygon: exact clipping.
    Polygon(Vec<Point2>),
}

/// Precomputed radial data for the fast crossing paths.
struct RadialShape {
    geom: RadialGeometry,
    /// mean radius (constant Fourier term)
    rho0: f64,
    r_lo: f64,
    r_hi: f64,
    /// max |r - rho0|
    dev: f64,
}

impl RadialShape {
    fn new(geom: RadialGeometry) -> Self {
        let rho0 = geom.r.cos_coeff(0);
        let mut r_lo = f64::INFINITY;
        let mut r_hi = f64::NEG_INFINITY;
        for j in 0..1024 {
            let r = geom.radius(math::TAU * j as f64 / 1024.0);
            r_lo = r_lo.min(r);
            r_hi = r_hi.max(r);
        }
        let dev = (r_hi - rho0).max(rho0 - r_lo);
        RadialShape {
            geom,
            rho0,
            r_lo,
            r_hi,
            dev,
        }
    }
}

/// Quadrature plan over a canonicalized region.
pub struct QuadPlan {
    engine: Engine,
    /// outer nodes (position, weight) with the polar Jacobian folded in
    nodes: Vec<(Point2, f64)>,
    /// canonical volume (π after normalization, but kept explicit)
    volume: f64,
    slice_rows: Vec<(usize, usize)>,
}

impl QuadPlan {
    pub fn new(region: &ConvexRegion, resolution: u32) -> Result<QuadPlan> {
        if resolution == 0 {
            return Err(Error::InvalidArgument("resolution must be ≥ 1".into()));
        }
        if !region.is_planar() {
            return Err(Error::Unsupported(
                "quadrature path handles planar regions; use Monte Carlo for the ball".into(),
            ));
        }
        let engine = canonicalize(region)?;
        let nodes = match &engine {
            Engine::Disk => polar_nodes(&RadialGeometry::new(FourierSeries::constant(1.0)), resolution),
            Engine::Radial(shape) => polar_nodes(&shape.geom, resolution),
            Engine::Polygon(vertices) => triangle_nodes(vertices, resolution),
        };
        let volume = match &engine {
            Engine::Disk => math::PI,
            Engine::Radial(shape) => shape.geom.area(),
            Engine::Polygon(vertices) => geom::polygon_signed_area(vertices),
        };
        // slice rows in balanced groups (row a pairs with all b > a)
        let n = nodes.len();
        let n_slices = 128.min(n);
        let mut slice_rows = Vec::with_capacity(n_slices);
        let total_pairs = n * (n - 1) / 2;
        let per_slice = total_pairs.div_ceil(n_slices);
        let mut start = 0usize;
        while start < n {
            let mut end = start;
            let mut pairs = 0usize;
            while end < n && pairs < per_slice {
                pairs += n - end - 1;
                end += 1;
            }
            slice_rows.push((start, end));
            start = end;
        }
        Ok(QuadPlan {
            engine,
            nodes,
            volume,
            slice_rows,
        })
    }

    pub fn n_slices(&self) -> usize {
        self.slice_rows.len()
    }

    /// Partial sum over one slice of ordered node pairs.
    pub fn eval_slice(&self, slice: usize) -> f64 {
        let (row_start, row_end) = self.slice_rows[slice];
        let n = self.nodes.len();
        let mut sum = 0.0;
        for a in row_start..row_end {
            let (x, wx) = self.nodes[a];
            let mut row = 0.0;
            for b in (a + 1)..n {
                let (y, wy) = self.nodes[b];
                let phi = self.acute_locus(x, y);
                row += wy * phi;
            }
            sum += wx * 2.0 * row;
        }
        sum
    }

    /// Fold slice partials (in slice order) into the probability.
    pub fn combine(&self, partials: impl IntoIterator<Item = f64>) -> f64 {
        let mut total = 0.0;
        for p in partials {
            total += p;
        }
        total / (self.volume * self.volume * self.volume)
    }

    fn acute_locus(&self, x: Point2, y: Point2) -> f64 {
        let len = x.dist(y);
        if len < DIAGONAL_GUARD {
            return 0.0;
        }
        match &self.engine {
            Engine::Disk => disk::acute_locus_area_unchecked(x, y, len),
            Engine::Radial(shape) => phi_radial(shape, x, y, len),
            Engine::Polygon(vertices) => phi_polygon(vertices, x, y, len),
        }
    }
}

/// Serial quadrature estimate of `p(region)`.
pub fn quadrature_p(region: &ConvexRegion, resolution: u32) -> Result<f64> {
    let plan = QuadPlan::new(region, resolution)?;
    let partials: Vec<f64> = (0..plan.n_slices()).map(|s| plan.eval_slice(s)).collect();
    Ok(plan.combine(partials))
}

/// Shift to the centroid frame, rescale to area π, pick the engine.
fn canonicalize(region: &ConvexRegion) -> Result<Engine> {
    match region {
        ConvexRegion::Disk { .. } => Ok(Engine::Disk),
        ConvexRegion::Polygon { vertices } => {
            let centroid = geom::polygon_centroid(vertices);
            let area = geom::polygon_signed_area(vertices);
            let scale = math::sqrt(math::PI / area);
            Ok(Engine::Polygon(
                vertices
                    .iter()
                    .map(|v| v.sub(centroid).scale(scale))
                    .collect(),
            ))
        }
        ConvexRegion::Ellipse { .. } | ConvexRegion::Radial { .. } => {
            let series = region.polar_series()?;
            let geometry = RadialGeometry::new(series);
            let area = geometry.area();
            let centroid = region.centroid()?;
            let scale = math::sqrt(math::PI / area);
            let series = if centroid.norm() > 1e-13 {
                let k_out = (2 * geometry.r.degree() + 16).clamp(24, 220);
                geometry.transformed_polar(scale, centroid.scale(-scale), k_out)?
            } else {
                geometry.r.scale(scale)
            };
            let series = canonical_rotation(&series.truncated(1e-14));
            let shape = RadialShape::new(RadialGeometry::new(series));
            // a radial region that is numerically a centered disk gets the
            // closed-form engine
            if shape.dev <= 1e-9 && math::abs(shape.rho0 - 1.0) <= 1e-9 {
                Ok(Engine::Disk)
            } else {
                Ok(Engine::Radial(shape))
            }
        }
        _ => Err(Error::Unsupported("planar regions only".into())),
    }
}

/// Rotate the boundary so the lowest non-constant harmonic has zero sine
/// part and positive cosine part. Congruent inputs then canonicalize to the
/// same series (up to rounding), making the quadrature rotation-invariant.
fn canonical_rotation(series: &FourierSeries) -> FourierSeries {
    let mut pivot = 0;
    for k in 1..=series.degree() {
        let power = series.cos_coeff(k) * series.cos_coeff(k)
            + series.sin_coeff(k) * series.sin_coeff(k);
        if power > 1e-16 {
            pivot = k;
            break;
        }
    }
    if pivot == 0 {
        return series.clone();
    }
    let phase = math::atan2(series.sin_coeff(pivot), series.cos_coeff(pivot)) / pivot as f64;
    let mut cos = alloc::vec![0.0; series.degree() + 1];
    let mut sin = alloc::vec![0.0; series.degree()];
    cos[0] = series.cos_coeff(0);
    for k in 1..=series.degree() {
        let (s, c) = math::sincos(k as f64 * phase);
        cos[k] = series.cos_coeff(k) * c + series.sin_coeff(k) * s;
        sin[k - 1] = series.sin_coeff(k) * c - series.cos_coeff(k) * s;
    }
    FourierSeries::new(cos, sin).unwrap_or_else(|_| series.clone())
}

/// Outer nodes in polar coordinates: `M = 48·res` midpoint angles ×
/// `R = 12·res` Gauss radii, weights `(2π/M) · w_u · u · r(θ)²`.
fn polar_nodes(geometry: &RadialGeometry, resolution: u32) -> Vec<(Point2, f64)> {
    let m = 48 * resolution as usize;
    let rule = GaussRule::new(12 * resolution as usize);
    let mut nodes = Vec::with_capacity(m * rule.nodes.len());
    for j in 0..m {
        let theta = math::TAU * (j as f64 + 0.5) / m as f64;
        let r = geometry.radius(theta);
        let (s, c) = math::sincos(theta);
        for (gu, gw) in rule.nodes.iter().zip(&rule.weights) {
            let u = 0.5 * (gu + 1.0);
            let w = 0.5 * gw;
            let rho = u * r;
            nodes.push((
                Point2::new(rho * c, rho * s),
                (math::TAU / m as f64) * w * u * r * r,
            ));
        }
    }
    nodes
}

/// Outer nodes over a fan triangulation: per triangle `(0, A, B)`, tensor
/// Gauss nodes under the Duffy map `X(s,t) = s·((1-t)A + tB)` with Jacobian
/// `2s·area`.
fn triangle_nodes(vertices: &[Point2], resolution: u32) -> Vec<(Point2, f64)> {
    let g = 12 * resolution as usize;
    let rule = GaussRule::new(g);
    let n = vertices.len();
    let mut nodes = Vec::with_capacity(n * g * g);
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        let tri_area = 0.5 * a.cross(b);
        for (gs, ws) in rule.nodes.iter().zip(&rule.weights) {
            let s = 0.5 * (gs + 1.0);
            let ws = 0.5 * ws;
            for (gt, wt) in rule.nodes.iter().zip(&rule.weights) {
                let t = 0.5 * (gt + 1.0);
                let wt = 0.5 * wt;
                let p = Point2::new(
                    s * ((1.0 - t) * a.x + t * b.x),
                    s * ((1.0 - t) * a.y + t * b.y),
                );
                nodes.push((p, ws * wt * 2.0 * s * tri_area));
            }
        }
    }
    nodes
}

fn phi_polygon(vertices: &[Point2], x: Point2, y: Point2, len: f64) -> f64 {
    let e = y.sub(x).scale(1.0 / len);
    // strip { X·e < z·e < Y·e }
    let upper = geom::clip_polygon_halfplane(vertices, e, y.dot(e));
    if upper.len() < 3 {
        return 0.0;
    }
    let strip = geom::clip_polygon_halfplane(&upper, Point2::new(-e.x, -e.y), -x.dot(e));
    if strip.len() < 3 {
        return 0.0;
    }
    let strip_area = geom::polygon_signed_area(&strip);
    let mid = Point2::new(0.5 * (x.x + y.x), 0.5 * (x.y + y.y));
    let lens = geom::polygon_circle_intersection_area(vertices, mid, 0.5 * len);
    (strip_area - lens).max(0.0)
}

fn phi_radial(shape: &RadialShape, x: Point2, y: Point2, len: f64) -> f64 {
    let e = y.sub(x).scale(1.0 / len);
    let area = shape.geom.area();
    let strip = area
        - radial_cap_area(shape, e, y.dot(e))
        - radial_cap_area(shape, Point2::new(-e.x, -e.y), -x.dot(e));
    let mid = Point2::new(0.5 * (x.x + y.x), 0.5 * (x.y + y.y));
    let lens = radial_lens_area(shape, mid, 0.5 * len);
    (strip - lens).max(0.0)
}

/// Area of `{ z ∈ S : z·n > c }` with a Newton fast path seeded from the
/// mean-radius circle; falls back to the robust bisection in `RadialGeometry`
/// near tangency or if Newton wanders.
fn radial_cap_area(shape: &RadialShape, n: Point2, c: f64) -> f64 {
    if c >= shape.r_hi {
        return 0.0;
    }
    if c <= -shape.r_hi {
        return shape.geom.area();
    }
    let phi_n = n.angle();
    let q = c / shape.rho0;
    // Newton needs a transversal crossing; near-tangent configurations and
    // strong perturbations go to the robust bisection path
    if !(-0.995..=0.995).contains(&q) {
        return robust_cap_area(shape, n, c);
    }
    let alpha = math::acos_clamped(q);
    if math::sin(alpha) * shape.r_lo < 3.0 * shape.dev + 0.01 {
        return robust_cap_area(shape, n, c);
    }
    let newton = |start: f64| -> Option<f64> {
        let mut t = start;
        for _ in 0..40 {
            let (r, dr) = shape.geom.r.eval_with_derivative(t);
            let (s_t, c_t) = math::sincos(t - phi_n);
            let v = r * c_t - c;
            let d = dr * c_t - r * s_t;
            if math::abs(d) < 1e-12 {
                return None;
            }
            let step = v / d;
            t -= step;
            if math::abs(t - start) > 1.2 {
                return None;
            }
            if math::abs(step) < 1e-13 {
                return Some(t);
            }
        }
        None
    };
    let t1 = newton(phi_n - alpha);
    let t2 = newton(phi_n + alpha);
    match (t1, t2) {
        (Some(t1), Some(t2)) if t2 > t1 + 1e-9 => {
            let p1 = shape.geom.point(t1);
            let p2 = shape.geom.point(t2);
            shape.geom.half_integral_r2(t1, t2) + 0.5 * p2.cross(p1)
        }
        _ => robust_cap_area(shape, n, c),
    }
}

fn robust_cap_area(shape: &RadialShape, n: Point2, c: f64) -> f64 {
    match shape.geom.cap_arc(n, c) {
        CapArc::Empty => 0.0,
        CapArc::Full => shape.geom.area(),
        CapArc::Arc(t1, t2) => {
            let p1 = shape.geom.point(t1);
            let p2 = shape.geom.point(t2);
            shape.geom.half_integral_r2(t1, t2) + 0.5 * p2.cross(p1)
        }
    }
}

/// Area of `S ∩ disk(center, rho)` for the smooth radial region.
fn radial_lens_area(shape: &RadialShape, center: Point2, rho: f64) -> f64 {
    let d = center.norm();
    // margin by which the boundary-to-center distance can deviate from the
    // mean-radius circle caused by the perturbation
    let margin = shape.dev * (2.0 * shape.rho0 + 2.0 * d + shape.dev) + 1e-12;
    let w0_min = (shape.rho0 - d) * (shape.rho0 - d) - rho * rho;
    let w0_max = (shape.rho0 + d) * (shape.rho0 + d) - rho * rho;
    if w0_min > margin {
        // boundary entirely outside the circle: circle ⊂ S
        return math::PI * rho * rho;
    }
    if w0_max < -margin {
        // boundary entirely inside the circle: S ⊂ circle
        return shape.geom.area();
    }
    let w = |t: f64| {
        let p = shape.geom.point(t);
        p.dist_squared(center) - rho * rho
    };
    let phi_m = center.angle();
    let mut crossings: Vec<f64> = Vec::new();
    let mut used_newton = false;
    if d > 1e-9 {
        let q = (shape.rho0 * shape.rho0 + d * d - rho * rho) / (2.0 * d * shape.rho0);
        if (-0.98..=0.98).contains(&q) && shape.dev < 0.12 * shape.rho0 {
            let alpha = math::acos_clamped(q);
            let newton = |start: f64| -> Option<f64> {
                let mut t = start;
                for _ in 0..40 {
                    let (r, dr) = shape.geom.r.eval_with_derivative(t);
                    let (s, cc) = math::sincos(t);
                    let z = Point2::new(r * cc - center.x, r * s - center.y);
                    // d/dt |z(t) - m|² = 2 (z - m)·z'
                    let zp = Point2::new(dr * cc - r * s, dr * s + r * cc);
                    let v = z.norm_squared() - rho * rho;
                    let dv = 2.0 * z.dot(zp);
                    if math::abs(dv) < 1e-12 {
                        return None;
                    }
                    let step = v / dv;
                    t -= step;
                    if math::abs(t - start) > 1.2 {
                        return None;
                    }
                    if math::abs(step) < 1e-13 {
                        return Some(t);
                    }
                }
                None
            };
            if let (Some(t1), Some(t2)) = (newton(phi_m - alpha), newton(phi_m + alpha)) {
                if t2 > t1 + 1e-9 && t2 - t1 < math::TAU - 1e-9 {
                    crossings.push(t1);
                    crossings.push(t2);
                    used_newton = true;
                }
            }
        }
    }
    if !used_newton {
        crossings = scan_circle_crossings(&w);
        if crossings.is_empty() {
            // no boundary crossing: decide containment by one sample
            return if w(0.0) > 0.0 {
                math::PI * rho * rho
            } else {
                shape.geom.area()
            };
        }
    }
    lens_from_crossings(shape, center, rho, &w, &crossings)
}

/// Dense scan + bisection for all boundary-circle crossings.
fn scan_circle_crossings(w: &dyn Fn(f64) -> f64) -> Vec<f64> {
    let scan = 512usize;
    let mut crossings = Vec::new();
    let mut prev_t = 0.0;
    let mut prev_v = w(0.0);
    for j in 1..=scan {
        let t = math::TAU * j as f64 / scan as f64;
        let v = w(t);
        if prev_v == 0.0 || prev_v * v < 0.0 {
            let (mut a, mut b) = (prev_t, t);
            let mut va = prev_v;
            for _ in 0..80 {
                let mid = 0.5 * (a + b);
                let vm = w(mid);
                if va * vm <= 0.0 {
                    b = mid;
                } else {
                    a = mid;
                    va = vm;
                }
            }
            crossings.push(0.5 * (a + b));
        }
        prev_t = t;
        prev_v = v;
    }
    crossings
}

/// Assemble the intersection area from boundary/circle crossing angles via
/// Green's theorem: boundary arcs where `w < 0` plus the closing circle arcs.
fn lens_from_crossings(
    shape: &RadialShape,
    center: Point2,
    rho: f64,
    w: &dyn Fn(f64) -> f64,
    crossings: &[f64],
) -> f64 {
    let k = crossings.len();
    debug_assert!(k % 2 == 0, "odd crossing count");
    if k == 0 {
        return 0.0;
    }
    // consecutive pieces share their endpoints exactly (both lie at the
    // crossing points), so the closed-curve Green integral is the plain sum
    // of the per-piece line integrals
    let mut area = 0.0;
    for i in 0..k {
        let t_a = crossings[i];
        let mut t_b = crossings[(i + 1) % k];
        if t_b <= t_a {
            t_b += math::TAU;
        }
        let mid = 0.5 * (t_a + t_b);
        if w(mid) < 0.0 {
            // boundary arc inside the circle
            area += shape.geom.half_integral_r2(t_a, t_b);
        } else {
            // closing circle arc from exit point to next entry point (ccw)
            let p_exit = shape.geom.point(t_a);
            let p_entry = shape.geom.point(t_b);
            let psi_exit = p_exit.sub(center).angle();
            let psi_entry = p_entry.sub(center).angle();
            let mut dpsi = psi_entry - psi_exit;
            while dpsi < 0.0 {
                dpsi += math::TAU;
            }
            while dpsi > math::TAU {
                dpsi -= math::TAU;
            }
            let (s1, c1) = math::sincos(psi_exit);
            let (s2, c2) = math::sincos(psi_exit + dpsi);
            area += 0.5 * (rho * rho * dpsi + rho * (center.x * (s2 - s1) - center.y * (c2 - c1)));
        }
    }
    area
}
