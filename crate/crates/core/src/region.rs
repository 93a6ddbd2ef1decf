//! Convex-region representations and metric primitives.
//!
//! Planar variants are the universe of the 2-D estimators: the disk, ellipses,
//! convex polygons, and star-shaped regions given by a radial trigonometric
//! polynomial `r(θ)`. The 3-D variants (ball, spherical-harmonic perturbed
//! ball) are sampled by Monte Carlo only.
//!
//! Validation happens at construction: polygons must be counter-clockwise and
//! strictly convex up to tolerance, radial boundaries must be positive and
//! pass the curvature criterion `r² + 2r'² - r·r'' ≥ 0` on a dense grid.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fourier::FourierSeries;
use crate::geom::{self, Point2, Point3, Similarity2};
use crate::math;
use crate::quad;

/// Grid used for numerical invariant checks on smooth boundaries.
const CHECK_GRID: usize = 4096;
/// Slack for the curvature-positivity convexity criterion.
const CONVEXITY_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub enum ConvexRegion {
    Disk { radius: f64 },
    Ellipse { a: f64, b: f64 },
    Polygon { vertices: Vec<Point2> },
    Radial { shape: RadialGeometry },
    Ball3 { radius: f64 },
    PerturbedBall3 { ylm: Vec<(u32, i32, f64)>, amplitude: f64 },
}

impl ConvexRegion {
    pub fn unit_disk() -> Self {
        ConvexRegion::Disk { radius: 1.0 }
    }

    pub fn disk(radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidRegion("disk radius must be positive".into()));
        }
        Ok(ConvexRegion::Disk { radius })
    }

    pub fn ellipse(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0) {
            return Err(Error::InvalidRegion(
                "ellipse semi-axes must be positive".into(),
            ));
        }
        Ok(ConvexRegion::Ellipse { a, b })
    }

    pub fn polygon(vertices: Vec<Point2>) -> Result<Self> {
        geom::validate_convex_ccw(&vertices)?;
        Ok(ConvexRegion::Polygon { vertices })
    }

    /// Axis-aligned rectangle `[0, w] × [0, h]`.
    pub fn rectangle(w: f64, h: f64) -> Result<Self> {
        ConvexRegion::polygon(alloc::vec![
            Point2::new(0.0, 0.0),
            Point2::new(w, 0.0),
            Point2::new(w, h),
            Point2::new(0.0, h),
        ])
    }

    /// Star-shaped region with boundary `r(θ)` given directly as a series.
    pub fn radial(r: FourierSeries) -> Result<Self> {
        let shape = RadialGeometry::new(r);
        shape.validate()?;
        Ok(ConvexRegion::Radial { shape })
    }

    /// Region with boundary `r(θ) = 1 + g(θ)`.
    pub fn radial_from_deviation(g: &FourierSeries) -> Result<Self> {
        ConvexRegion::radial(g.add_constant(1.0))
    }

    /// Unit disk translated to `center`, in polar form about the origin.
    /// Requires `|center| < 1` so the origin stays interior.
    pub fn offset_unit_disk(center: Point2) -> Result<Self> {
        let d = center.norm();
        if d >= 0.9 {
            return Err(Error::InvalidRegion(
                "offset unit disk must keep the origin well inside".into(),
            ));
        }
        let samples: Vec<f64> = (0..512)
            .map(|j| {
                let theta = math::TAU * j as f64 / 512.0;
                let u = Point2::new(math::cos(theta), math::sin(theta));
                let along = center.dot(u);
                along + math::sqrt(along * along - d * d + 1.0)
            })
            .collect();
        let (series, resid) = FourierSeries::decompose(&samples, 80)?;
        debug_assert!(resid < 1e-10);
        ConvexRegion::radial(series)
    }

    pub fn ball3(radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidRegion("ball radius must be positive".into()));
        }
        Ok(ConvexRegion::Ball3 { radius })
    }

    /// Unit ball with radial perturbation `1 + amplitude · Σ c · Y_l^m`.
    pub fn perturbed_ball3(ylm: Vec<(u32, i32, f64)>, amplitude: f64) -> Result<Self> {
        if !amplitude.is_finite() || ylm.iter().any(|&(_, _, c)| !c.is_finite()) {
            return Err(Error::InvalidRegion(
                "perturbed ball coefficients must be finite".into(),
            ));
        }
        for &(l, m, _) in &ylm {
            if m.unsigned_abs() > l {
                return Err(Error::InvalidRegion(
                    "spherical harmonic requires |m| <= l".into(),
                ));
            }
        }
        let region = ConvexRegion::PerturbedBall3 { ylm, amplitude };
        // positivity of the radial function on a sampling grid of the sphere
        let mut min_r = f64::INFINITY;
        for i in 0..64 {
            let theta = math::PI * (i as f64 + 0.5) / 64.0;
            for j in 0..128 {
                let phi = math::TAU * j as f64 / 128.0;
                min_r = min_r.min(region.ball_radial(theta, phi));
            }
        }
        if min_r <= 0.0 {
            return Err(Error::InvalidRegion(
                "perturbed ball radial function must stay positive".into(),
            ));
        }
        Ok(region)
    }

    /// Radial function of the 3-D variants at spherical angles `(θ, φ)`.
    pub fn ball_radial(&self, theta: f64, phi: f64) -> f64 {
        match self {
            ConvexRegion::Ball3 { radius } => *radius,
            ConvexRegion::PerturbedBall3 { ylm, amplitude } => {
                let mut g = 0.0;
                for &(l, m, c) in ylm {
                    g += c * crate::ball3::real_spherical_harmonic(l, m, theta, phi);
                }
                1.0 + amplitude * g
            }
            _ => f64::NAN,
        }
    }

    pub fn is_planar(&self) -> bool {
        !matches!(
            self,
            ConvexRegion::Ball3 { .. } | ConvexRegion::PerturbedBall3 { .. }
        )
    }

    /// Area of a planar region (exact for disks, ellipses, polygons, and
    /// radial trig-polynomial boundaries).
    pub fn area(&self) -> Result<f64> {
        match self {
            ConvexRegion::Disk { radius } => Ok(math::PI * radius * radius),
            ConvexRegion::Ellipse { a, b } => Ok(math::PI * a * b),
            ConvexRegion::Polygon { vertices } => Ok(geom::polygon_signed_area(vertices)),
            ConvexRegion::Radial { shape } => Ok(shape.area()),
            _ => Err(Error::Unsupported("area is defined for planar regions".into())),
        }
    }

    /// Perimeter of a planar region. Smooth boundaries use the spectrally
    /// convergent periodic trapezoid rule on `√(r² + r'²)`.
    pub fn perimeter(&self) -> Result<f64> {
        match self {
            ConvexRegion::Disk { radius } => Ok(math::TAU * radius),
            ConvexRegion::Ellipse { a, b } => Ok(quad::periodic_trapezoid(CHECK_GRID, |t| {
                let (s, c) = math::sincos(t);
                math::hypot(a * s, b * c)
            })),
            ConvexRegion::Polygon { vertices } => Ok(geom::polygon_perimeter(vertices)),
            ConvexRegion::Radial { shape } => Ok(quad::periodic_trapezoid(CHECK_GRID, |t| {
                math::hypot(shape.radius(t), shape.dr.eval(t))
            })),
            _ => Err(Error::Unsupported(
                "perimeter is defined for planar regions".into(),
            )),
        }
    }

    pub fn centroid(&self) -> Result<Point2> {
        match self {
            ConvexRegion::Disk { .. } | ConvexRegion::Ellipse { .. } => Ok(Point2::new(0.0, 0.0)),
            ConvexRegion::Polygon { vertices } => Ok(geom::polygon_centroid(vertices)),
            ConvexRegion::Radial { shape } => {
                // x̄ = ∫ r³ cos θ dθ / (3A), exact for trig polynomials
                let r3 = shape.r2.product(&shape.r);
                let mx = quad::periodic_trapezoid(CHECK_GRID, |t| r3.eval(t) * math::cos(t)) / 3.0;
                let my = quad::periodic_trapezoid(CHECK_GRID, |t| r3.eval(t) * math::sin(t)) / 3.0;
                let area = shape.area();
                Ok(Point2::new(mx / area, my / area))
            }
            _ => Err(Error::Unsupported(
                "centroid is defined for planar regions".into(),
            )),
        }
    }

    /// Membership test for planar regions.
    pub fn contains(&self, p: Point2) -> bool {
        match self {
            ConvexRegion::Disk { radius } => p.norm_squared() <= radius * radius,
            ConvexRegion::Ellipse { a, b } => {
                let u = p.x / a;
                let v = p.y / b;
                u * u + v * v <= 1.0
            }
            ConvexRegion::Polygon { vertices } => geom::point_in_convex_polygon(vertices, p),
            ConvexRegion::Radial { shape } => {
                let r = shape.radius(p.angle());
                p.norm_squared() <= r * r
            }
            _ => false,
        }
    }

    /// Membership test for the 3-D variants.
    pub fn contains3(&self, p: Point3) -> bool {
        match self {
            ConvexRegion::Ball3 { radius } => p.norm_squared() <= radius * radius,
            ConvexRegion::PerturbedBall3 { .. } => {
                let rho = math::sqrt(p.norm_squared());
                if rho == 0.0 {
                    return true;
                }
                let theta = math::acos_clamped(p.z / rho);
                let phi = math::atan2(p.y, p.x);
                rho <= self.ball_radial(theta, phi)
            }
            _ => false,
        }
    }

    /// Axis-aligned bounding half-width for rejection sampling (planar).
    pub fn bounding_half_width(&self) -> Result<(Point2, Point2)> {
        match self {
            ConvexRegion::Disk { radius } => Ok((
                Point2::new(-radius, -radius),
                Point2::new(*radius, *radius),
            )),
            ConvexRegion::Ellipse { a, b } => Ok((Point2::new(-a, -b), Point2::new(*a, *b))),
            ConvexRegion::Polygon { vertices } => {
                let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
                let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
                for v in vertices {
                    lo.x = lo.x.min(v.x);
                    lo.y = lo.y.min(v.y);
                    hi.x = hi.x.max(v.x);
                    hi.y = hi.y.max(v.y);
                }
                Ok((lo, hi))
            }
            ConvexRegion::Radial { shape } => {
                let right = shape.support(0.0).1;
                let top = shape.support(math::PI / 2.0).1;
                let left = shape.support(math::PI).1;
                let bottom = shape.support(1.5 * math::PI).1;
                Ok((Point2::new(-left, -bottom), Point2::new(right, top)))
            }
            _ => Err(Error::Unsupported("planar bounding box only".into())),
        }
    }

    /// Polar boundary as a Fourier series (smooth planar variants only).
    pub fn polar_series(&self) -> Result<FourierSeries> {
        match self {
            ConvexRegion::Disk { radius } => Ok(FourierSeries::constant(*radius)),
            ConvexRegion::Radial { shape } => Ok(shape.r.clone()),
            ConvexRegion::Ellipse { a, b } => {
                let samples: Vec<f64> = (0..1024)
                    .map(|j| {
                        let t = math::TAU * j as f64 / 1024.0;
                        let (s, c) = math::sincos(t);
                        a * b / math::hypot(b * c, a * s)
                    })
                    .collect();
                let (series, resid) = FourierSeries::decompose(&samples, 200)?;
                if resid > 1e-9 {
                    return Err(Error::NonConvergence(
                        "polar expansion of ellipse did not resolve".into(),
                    ));
                }
                Ok(series)
            }
            _ => Err(Error::Unsupported(
                "polar boundary requires a smooth star-shaped planar region".into(),
            )),
        }
    }

    /// Uniform rescaling about the origin.
    pub fn scaled(&self, factor: f64) -> Result<ConvexRegion> {
        if !(factor.is_finite() && factor > 0.0) {
            return Err(Error::InvalidArgument("scale factor must be positive".into()));
        }
        Ok(match self {
            ConvexRegion::Disk { radius } => ConvexRegion::Disk {
                radius: radius * factor,
            },
            ConvexRegion::Ellipse { a, b } => ConvexRegion::Ellipse {
                a: a * factor,
                b: b * factor,
            },
            ConvexRegion::Polygon { vertices } => ConvexRegion::Polygon {
                vertices: vertices.iter().map(|v| v.scale(factor)).collect(),
            },
            ConvexRegion::Radial { shape } => ConvexRegion::Radial {
                shape: RadialGeometry::new(shape.r.scale(factor)),
            },
            ConvexRegion::Ball3 { radius } => ConvexRegion::Ball3 {
                radius: radius * factor,
            },
            ConvexRegion::PerturbedBall3 { .. } => {
                return Err(Error::Unsupported(
                    "scaling a perturbed ball is not needed".into(),
                ))
            }
        })
    }

    /// Rotation about the origin (planar variants).
    pub fn rotated(&self, phi: f64) -> Result<ConvexRegion> {
        match self {
            ConvexRegion::Disk { .. } | ConvexRegion::Ellipse { .. } => Ok(self.clone()),
            ConvexRegion::Polygon { vertices } => {
                let (s, c) = math::sincos(phi);
                Ok(ConvexRegion::Polygon {
                    vertices: vertices
                        .iter()
                        .map(|v| Point2::new(c * v.x - s * v.y, s * v.x + c * v.y))
                        .collect(),
                })
            }
            ConvexRegion::Radial { shape } => {
                // r'(θ) = r(θ - φ): rotate each harmonic's phase
                let k_max = shape.r.degree();
                let mut cos = alloc::vec![0.0; k_max + 1];
                let mut sin = alloc::vec![0.0; k_max];
                cos[0] = shape.r.cos_coeff(0);
                for k in 1..=k_max {
                    let (skp, ckp) = math::sincos(k as f64 * phi);
                    cos[k] = shape.r.cos_coeff(k) * ckp - shape.r.sin_coeff(k) * skp;
                    sin[k - 1] = shape.r.cos_coeff(k) * skp + shape.r.sin_coeff(k) * ckp;
                }
                Ok(ConvexRegion::Radial {
                    shape: RadialGeometry::new(FourierSeries::new(cos, sin)?),
                })
            }
            _ => Err(Error::Unsupported("rotation of planar regions only".into())),
        }
    }

    /// Translation (polygons only; for near-disk radial regions use
    /// `offset_unit_disk` or the variational re-embedding instead).
    pub fn translated(&self, shift: Point2) -> Result<ConvexRegion> {
        match self {
            ConvexRegion::Polygon { vertices } => Ok(ConvexRegion::Polygon {
                vertices: vertices.iter().map(|v| v.add(shift)).collect(),
            }),
            _ => Err(Error::Unsupported(
                "translation keeps polar form only for polygons".into(),
            )),
        }
    }

    /// Hausdorff distance to the centered unit disk, via the support-function
    /// identity `d_H(S, D) = sup_u |h_S(u) - 1|` for convex bodies.
    pub fn hausdorff_distance_to_unit_disk(&self) -> Result<f64> {
        match self {
            ConvexRegion::Disk { radius } => Ok(math::abs(radius - 1.0)),
            ConvexRegion::Ellipse { a, b } => Ok(math::abs(a - 1.0).max(math::abs(b - 1.0))),
            ConvexRegion::Polygon { vertices } => {
                if !geom::point_in_convex_polygon(vertices, Point2::new(0.0, 0.0)) {
                    return Err(Error::InvalidArgument(
                        "region must contain the origin".into(),
                    ));
                }
                let support = |u: f64| -> f64 {
                    let dir = Point2::new(math::cos(u), math::sin(u));
                    vertices
                        .iter()
                        .map(|v| v.dot(dir))
                        .fold(f64::NEG_INFINITY, f64::max)
                };
                Ok(sup_abs_minus_one(support))
            }
            ConvexRegion::Radial { shape } => Ok(sup_abs_minus_one(|u| shape.support(u).1)),
            _ => Err(Error::Unsupported(
                "Hausdorff distance to the unit disk is planar".into(),
            )),
        }
    }

    /// Reposition the region so its longest chord is the segment from (0,0)
    /// to (1,0). Returns the framed region and the similarity applied.
    pub fn longest_segment_frame(&self) -> Result<FramedRegion> {
        let (p, q) = match self {
            ConvexRegion::Disk { radius } => {
                (Point2::new(-radius, 0.0), Point2::new(*radius, 0.0))
            }
            ConvexRegion::Ellipse { a, b } => {
                if a >= b {
                    (Point2::new(-a, 0.0), Point2::new(*a, 0.0))
                } else {
                    (Point2::new(0.0, -b), Point2::new(0.0, *b))
                }
            }
            ConvexRegion::Polygon { vertices } => {
                let (p, q, _) = geom::polygon_diameter(vertices);
                (p, q)
            }
            ConvexRegion::Radial { shape } => shape.diameter_chord(),
            _ => {
                return Err(Error::Unsupported(
                    "framing is defined for planar regions".into(),
                ))
            }
        };
        let chord = q.sub(p);
        let len = chord.norm();
        if !(len.is_finite() && len > 1e-12) {
            return Err(Error::InvalidRegion("region has degenerate diameter".into()));
        }
        let map = Similarity2 {
            scale: 1.0 / len,
            angle: -chord.angle(),
            shift: Point2::new(0.0, 0.0),
        };
        // shift so that p maps to the origin
        let image_of_p = map.apply(p);
        let map = Similarity2 {
            shift: Point2::new(-image_of_p.x, -image_of_p.y),
            ..map
        };
        FramedRegion::new(self.clone(), map)
    }
}

/// A planar region together with the similarity that frames its longest
/// chord as the unit segment on the x-axis.
#[derive(Clone, Debug)]
pub struct FramedRegion {
    pub region: ConvexRegion,
    pub map: Similarity2,
    framed_polygon: Option<Vec<Point2>>,
}

/// Sampled height function of a framed region.
#[derive(Clone, Debug)]
pub struct HeightProfile {
    pub xs: Vec<f64>,
    pub heights: Vec<f64>,
    /// Supremum of the heights (refined beyond the grid).
    pub hbar: f64,
}

impl FramedRegion {
    fn new(region: ConvexRegion, map: Similarity2) -> Result<Self> {
        let framed_polygon = match &region {
            ConvexRegion::Polygon { vertices } => {
                Some(vertices.iter().map(|v| map.apply(*v)).collect())
            }
            _ => None,
        };
        Ok(FramedRegion {
            region,
            map,
            framed_polygon,
        })
    }

    /// Vertical extent of the framed region at abscissa `x`.
    pub fn height_at(&self, x: f64) -> f64 {
        if let Some(vertices) = &self.framed_polygon {
            return polygon_vertical_extent(vertices, x);
        }
        match &self.region {
            ConvexRegion::Disk { .. } | ConvexRegion::Ellipse { .. } | ConvexRegion::Radial { .. } => {
                let shape = match &self.region {
                    ConvexRegion::Disk { radius } => RadialGeometry::new(FourierSeries::constant(*radius)),
                    ConvexRegion::Radial { shape } => shape.clone(),
                    ConvexRegion::Ellipse { .. } => {
                        RadialGeometry::new(self.region.polar_series().expect("ellipse polar"))
                    }
                    _ => unreachable!(),
                };
                let inv = self.map.inverse();
                let base = inv.apply(Point2::new(x, 0.0));
                let tip = inv.apply(Point2::new(x, 1.0));
                let dir = tip.sub(base);
                let len = dir.norm();
                let n = Point2::new(-dir.y / len, dir.x / len);
                let c = base.dot(n);
                match shape.cap_arc(n, c) {
                    CapArc::Empty | CapArc::Full => 0.0,
                    CapArc::Arc(t1, t2) => {
                        shape.point(t1).dist(shape.point(t2)) * self.map.scale
                    }
                }
            }
            _ => 0.0,
        }
    }

    /// Height profile on `grid_n` uniformly spaced abscissae, with the
    /// supremum refined beyond the grid so it is stable under grid doubling.
    pub fn height_profile(&self, grid_n: usize) -> Result<HeightProfile> {
        if grid_n < 2 {
            return Err(Error::InvalidArgument("need at least 2 grid points".into()));
        }
        let xs: Vec<f64> = (0..grid_n)
            .map(|i| i as f64 / (grid_n - 1) as f64)
            .collect();
        let heights: Vec<f64> = xs.iter().map(|&x| self.height_at(x)).collect();
        let mut hbar = 0.0_f64;
        let mut best_x = 0.5;
        for (&x, &h) in xs.iter().zip(&heights) {
            if h > hbar {
                hbar = h;
                best_x = x;
            }
        }
        // polygons attain the max height at a vertex abscissa
        if let Some(vertices) = &self.framed_polygon {
            for v in vertices {
                hbar = hbar.max(self.height_at(v.x));
            }
        } else {
            // golden-section refinement around the best grid point
            let step = 1.0 / (grid_n - 1) as f64;
            let (mut lo, mut hi) = ((best_x - step).max(0.0), (best_x + step).min(1.0));
            let phi = 0.5 * (math::sqrt(5.0) - 1.0);
            for _ in 0..80 {
                let m1 = hi - phi * (hi - lo);
                let m2 = lo + phi * (hi - lo);
                if self.height_at(m1) < self.height_at(m2) {
                    lo = m1;
                } else {
                    hi = m2;
                }
            }
            hbar = hbar.max(self.height_at(0.5 * (lo + hi)));
        }
        Ok(HeightProfile { xs, heights, hbar })
    }
}

fn polygon_vertical_extent(vertices: &[Point2], x: f64) -> f64 {
    let n = vertices.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        if (a.x - x) * (b.x - x) <= 0.0 && a.x != b.x {
            let t = (x - a.x) / (b.x - a.x);
            if (0.0..=1.0).contains(&t) {
                let y = a.y + t * (b.y - a.y);
                lo = lo.min(y);
                hi = hi.max(y);
            }
        } else if a.x == x {
            lo = lo.min(a.y);
            hi = hi.max(a.y);
        }
    }
    if hi > lo {
        hi - lo
    } else {
        0.0
    }
}

fn sup_abs_minus_one(support: impl Fn(f64) -> f64) -> f64 {
    // coarse scan, then golden-section refinement of both extrema of h(u)
    let n = CHECK_GRID;
    let mut best_max = (0.0, f64::NEG_INFINITY);
    let mut best_min = (0.0, f64::INFINITY);
    for j in 0..n {
        let u = math::TAU * j as f64 / n as f64;
        let h = support(u);
        if h > best_max.1 {
            best_max = (u, h);
        }
        if h < best_min.1 {
            best_min = (u, h);
        }
    }
    let refine = |u0: f64, sign: f64| -> f64 {
        let step = math::TAU / n as f64;
        let (mut lo, mut hi) = (u0 - step, u0 + step);
        let phi = 0.5 * (math::sqrt(5.0) - 1.0);
        for _ in 0..60 {
            let m1 = hi - phi * (hi - lo);
            let m2 = lo + phi * (hi - lo);
            if sign * support(m1) < sign * support(m2) {
                lo = m1;
            } else {
                hi = m2;
            }
        }
        support(0.5 * (lo + hi))
    };
    let h_max = refine(best_max.0, 1.0).max(best_max.1);
    let h_min = refine(best_min.0, -1.0).min(best_min.1);
    math::abs(h_max - 1.0).max(math::abs(h_min - 1.0))
}

/// Which part of the boundary lies in the open half-plane `z·n > c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CapArc {
    Empty,
    Full,
    /// Angles `θ1 < θ2` (mod 2π, `θ2 ∈ (θ1, θ1 + 2π)`) bounding the arc.
    Arc(f64, f64),
}

/// Star-shaped boundary `r(θ)` with its derivative and the exact
/// antiderivative of `r²` precomputed.
#[derive(Clone, Debug)]
pub struct RadialGeometry {
    pub r: FourierSeries,
    pub dr: FourierSeries,
    r2: FourierSeries,
}

impl RadialGeometry {
    pub fn new(r: FourierSeries) -> Self {
        let dr = r.derivative();
        let r2 = r.product(&r);
        RadialGeometry { r, dr, r2 }
    }

    fn validate(&self) -> Result<()> {
        if !self.r.is_finite() {
            return Err(Error::InvalidRegion("radial series must be finite".into()));
        }
        let ddr = self.dr.derivative();
        let mut min_r = f64::INFINITY;
        let mut min_curv = f64::INFINITY;
        let mut scale: f64 = 0.0;
        for j in 0..CHECK_GRID {
            let t = math::TAU * j as f64 / CHECK_GRID as f64;
            let r = self.r.eval(t);
            let dr = self.dr.eval(t);
            let rdd = ddr.eval(t);
            min_r = min_r.min(r);
            scale = scale.max(r * r);
            // curvature numerator of a polar curve; positive iff locally convex
            min_curv = min_curv.min(r * r + 2.0 * dr * dr - r * rdd);
        }
        if min_r <= 0.0 {
            return Err(Error::InvalidRegion(
                "radial boundary must satisfy r(θ) > 0".into(),
            ));
        }
        if min_curv < -CONVEXITY_TOL * scale {
            return Err(Error::InvalidRegion(
                "radial boundary fails the convexity criterion r² + 2r'² - r·r'' ≥ 0".into(),
            ));
        }
        Ok(())
    }

    /// Convexity margin `min_θ (r² + 2r'² - r·r'')`, for telemetry and the
    /// homotopy's per-step convexity check.
    pub fn convexity_margin(&self) -> f64 {
        let ddr = self.dr.derivative();
        let mut min_curv = f64::INFINITY;
        for j in 0..CHECK_GRID {
            let t = math::TAU * j as f64 / CHECK_GRID as f64;
            let r = self.r.eval(t);
            let dr = self.dr.eval(t);
            min_curv = min_curv.min(r * r + 2.0 * dr * dr - r * ddr.eval(t));
        }
        min_curv
    }

    #[inline]
    pub fn radius(&self, theta: f64) -> f64 {
        self.r.eval(theta)
    }

    #[inline]
    pub fn point(&self, theta: f64) -> Point2 {
        let (s, c) = math::sincos(theta);
        let r = self.r.eval(theta);
        Point2::new(r * c, r * s)
    }

    /// Exact area `½ ∮ r²`.
    pub fn area(&self) -> f64 {
        0.5 * self.r2.integral(math::TAU)
    }

    /// Exact `½ ∫_{θ1}^{θ2} r² dθ` (the antiderivative is global, so the
    /// bounds may exceed `[0, 2π]`).
    pub fn half_integral_r2(&self, theta1: f64, theta2: f64) -> f64 {
        0.5 * (self.r2.integral(theta2) - self.r2.integral(theta1))
    }

    /// Support function: `(argmax θ, max_θ r(θ) cos(θ - u))`.
    pub fn support(&self, u: f64) -> (f64, f64) {
        let objective = |t: f64| {
            let r = self.r.eval(t);
            r * math::cos(t - u)
        };
        // coarse scan then golden-section; the objective has a single maximal
        // arc on a convex boundary
        let n = 128;
        let mut best = (u, f64::NEG_INFINITY);
        for j in 0..n {
            let t = u - math::PI + math::TAU * j as f64 / n as f64;
            let v = objective(t);
            if v > best.1 {
                best = (t, v);
            }
        }
        let step = math::TAU / n as f64;
        let (mut lo, mut hi) = (best.0 - step, best.0 + step);
        let phi = 0.5 * (math::sqrt(5.0) - 1.0);
        for _ in 0..70 {
            let m1 = hi - phi * (hi - lo);
            let m2 = lo + phi * (hi - lo);
            if objective(m1) < objective(m2) {
                lo = m1;
            } else {
                hi = m2;
            }
        }
        let t = 0.5 * (lo + hi);
        (t, objective(t))
    }

    /// Longest chord endpoints by antipodal width search.
    fn diameter_chord(&self) -> (Point2, Point2) {
        let width = |u: f64| self.support(u).1 + self.support(u + math::PI).1;
        let n = 256;
        let mut best = (0.0, f64::NEG_INFINITY);
        for j in 0..n {
            let u = math::PI * j as f64 / n as f64;
            let w = width(u);
            if w > best.1 {
                best = (u, w);
            }
        }
        let step = math::PI / n as f64;
        let (mut lo, mut hi) = (best.0 - step, best.0 + step);
        let phi = 0.5 * (math::sqrt(5.0) - 1.0);
        for _ in 0..70 {
            let m1 = hi - phi * (hi - lo);
            let m2 = lo + phi * (hi - lo);
            if width(m1) < width(m2) {
                lo = m1;
            } else {
                hi = m2;
            }
        }
        let u = 0.5 * (lo + hi);
        let (t_plus, _) = self.support(u);
        let (t_minus, _) = self.support(u + math::PI);
        (self.point(t_minus), self.point(t_plus))
    }

    /// Polar boundary (about the origin) of the transformed region
    /// `dilation·S + shift`, as a Fourier series of degree `k_out`.
    ///
    /// For each output angle the boundary point is located by Newton on the
    /// angular residual; near-identity transforms converge in a few steps.
    pub fn transformed_polar(
        &self,
        dilation: f64,
        shift: Point2,
        k_out: usize,
    ) -> Result<FourierSeries> {
        let n = (4 * k_out).max(512);
        let mut samples = alloc::vec![0.0; n];
        for (j, slot) in samples.iter_mut().enumerate() {
            let phi = math::TAU * j as f64 / n as f64;
            let (s_phi, c_phi) = math::sincos(phi);
            let u = Point2::new(c_phi, s_phi);
            let mut theta = phi;
            let mut converged = false;
            for _ in 0..60 {
                let r = self.r.eval(theta);
                let dr = self.dr.eval(theta);
                let (s_t, c_t) = math::sincos(theta);
                let p = Point2::new(dilation * r * c_t + shift.x, dilation * r * s_t + shift.y);
                // residual: angular offset of p from the target ray
                let res = u.cross(p);
                let dp = Point2::new(
                    dilation * (dr * c_t - r * s_t),
                    dilation * (dr * s_t + r * c_t),
                );
                let deriv = u.cross(dp);
                if math::abs(deriv) < 1e-14 {
                    break;
                }
                theta -= res / deriv;
                if math::abs(res) < 1e-14 {
                    converged = true;
                    break;
                }
            }
            let r = self.r.eval(theta);
            let (s_t, c_t) = math::sincos(theta);
            let p = Point2::new(dilation * r * c_t + shift.x, dilation * r * s_t + shift.y);
            let radial = p.dot(u);
            if !converged || radial <= 0.0 {
                return Err(Error::NonConvergence(
                    "polar re-parameterization failed; transform too far from identity".into(),
                ));
            }
            *slot = radial;
        }
        let (series, resid) = FourierSeries::decompose(&samples, k_out)?;
        if resid > 1e-8 {
            return Err(Error::NonConvergence(
                "polar re-parameterization left a large residual".into(),
            ));
        }
        Ok(series)
    }

    /// Boundary arc in the open half-plane `z·n > c` (`n` unit).
    ///
    /// Convexity makes `{θ : z(θ)·n > c}` a single arc, so the two crossings
    /// are bracketed between the support maximizer (where `z·n` is largest)
    /// and the antipodal minimizer, and bisection cannot miss them.
    pub fn cap_arc(&self, n: Point2, c: f64) -> CapArc {
        let u = n.angle();
        let (t_max, h_max) = self.support(u);
        if h_max <= c {
            return CapArc::Empty;
        }
        let (t_min, h_opp) = self.support(u + math::PI);
        if -h_opp >= c {
            return CapArc::Full;
        }
        let f = |t: f64| {
            let r = self.r.eval(t);
            r * math::cos(t - u) - c
        };
        // representatives of the minimizer on both sides of t_max
        let mut t_min_up = t_min;
        while t_min_up <= t_max {
            t_min_up += math::TAU;
        }
        while t_min_up > t_max + math::TAU {
            t_min_up -= math::TAU;
        }
        let t_min_down = t_min_up - math::TAU;
        let bisect = |mut pos: f64, mut neg: f64| -> f64 {
            for _ in 0..80 {
                let mid = 0.5 * (pos + neg);
                if f(mid) > 0.0 {
                    pos = mid;
                } else {
                    neg = mid;
                }
            }
            0.5 * (pos + neg)
        };
        let t2 = bisect(t_max, t_min_up);
        let t1 = bisect(t_max, t_min_down);
        let t1 = math::wrap_angle(t1);
        let mut t2 = math::wrap_angle(t2);
        if t2 <= t1 {
            t2 += math::TAU;
        }
        CapArc::Arc(t1, t2)
    }

    /// Area of the cap `{ z ∈ S : z·n > c }`.
    pub fn cap_area(&self, n: Point2, c: f64) -> f64 {
        match self.cap_arc(n, c) {
            CapArc::Empty => 0.0,
            CapArc::Full => self.area(),
            CapArc::Arc(t1, t2) => {
                let p1 = self.point(t1);
                let p2 = self.point(t2);
                self.half_integral_r2(t1, t2) + 0.5 * p2.cross(p1)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cos2_region(amplitude: f64) -> ConvexRegion {
        let g = FourierSeries::harmonic(2, amplitude, 0.0);
        ConvexRegion::radial_from_deviation(&g).unwrap()
    }

    #[test]
    fn areas_and_perimeters_of_reference_shapes() {
        let disk = ConvexRegion::unit_disk();
        assert!((disk.area().unwrap() - math::PI).abs() < 1e-12);
        assert!((disk.perimeter().unwrap() - math::TAU).abs() < 1e-12);

        let square = ConvexRegion::rectangle(1.0, 1.0).unwrap();
        assert!((square.area().unwrap() - 1.0).abs() < 1e-12);
        assert!((square.perimeter().unwrap() - 4.0).abs() < 1e-12);

        let ellipse = ConvexRegion::ellipse(2.0, 0.5).unwrap();
        assert!((ellipse.area().unwrap() - math::PI).abs() < 1e-12);
    }

    #[test]
    fn radial_area_matches_quadrature() {
        let region = cos2_region(0.05);
        let series = region.polar_series().unwrap();
        let by_quad = 0.5
            * quad::periodic_trapezoid(4096, |t| {
                let r = series.eval(t);
                r * r
            });
        assert!((region.area().unwrap() - by_quad).abs() < 1e-12);
        // deviation with zero mean: area = π + ‖g‖²/2 where ‖g‖² = π a²
        let expected = math::PI + 0.5 * math::PI * 0.05 * 0.05;
        assert!((region.area().unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn isoperimetric_inequality_across_variants() {
        let regions = [
            ConvexRegion::unit_disk(),
            ConvexRegion::ellipse(2.0, 0.5).unwrap(),
            ConvexRegion::rectangle(1.0, 0.3).unwrap(),
            cos2_region(0.05),
        ];
        for region in &regions {
            let p = region.perimeter().unwrap();
            let a = region.area().unwrap();
            assert!(p * p >= 4.0 * math::PI * a - 1e-8);
        }
        // equality only for the disk
        let disk = ConvexRegion::unit_disk();
        let p = disk.perimeter().unwrap();
        let a = disk.area().unwrap();
        assert!((p * p - 4.0 * math::PI * a).abs() < 1e-9);
    }

    #[test]
    fn convexity_validation_rejects_wavy_boundary() {
        // amplitude 0.2 at mode 5 violates r² + 2r'² - r·r'' ≥ 0
        let g = FourierSeries::harmonic(5, 0.2, 0.0);
        assert!(ConvexRegion::radial_from_deviation(&g).is_err());
        // gentle mode 2 is fine
        assert!(ConvexRegion::radial_from_deviation(&FourierSeries::harmonic(2, 0.05, 0.0)).is_ok());
        // r must stay positive
        let g = FourierSeries::harmonic(1, -1.5, 0.0);
        assert!(ConvexRegion::radial_from_deviation(&g).is_err());
    }

    #[test]
    fn hausdorff_distances() {
        assert!((ConvexRegion::disk(1.1).unwrap().hausdorff_distance_to_unit_disk().unwrap() - 0.1).abs() < 1e-15);
        assert!(ConvexRegion::unit_disk().hausdorff_distance_to_unit_disk().unwrap() < 1e-15);
        let region = cos2_region(0.05);
        let d = region.hausdorff_distance_to_unit_disk().unwrap();
        assert!((d - 0.05).abs() < 1e-4, "d = {d}");
        // scaled disk: ε up to the rounding of 1 + ε itself
        for eps in [0.01_f64, 0.2, 0.7] {
            let d = ConvexRegion::disk(1.0 + eps)
                .unwrap()
                .hausdorff_distance_to_unit_disk()
                .unwrap();
            assert_eq!(d, (1.0 + eps) - 1.0);
            assert!((d - eps).abs() < 1e-15);
        }
        // region not containing the origin
        let far = ConvexRegion::polygon(alloc::vec![
            Point2::new(2.0, 2.0),
            Point2::new(3.0, 2.0),
            Point2::new(2.5, 3.0),
        ])
        .unwrap();
        assert!(far.hausdorff_distance_to_unit_disk().is_err());
    }

    #[test]
    fn offset_disk_is_a_valid_radial_region() {
        let region = ConvexRegion::offset_unit_disk(Point2::new(0.3, -0.1)).unwrap();
        assert!((region.area().unwrap() - math::PI).abs() < 1e-10);
        assert!((region.perimeter().unwrap() - math::TAU).abs() < 1e-10);
        let c = region.centroid().unwrap();
        assert!((c.x - 0.3).abs() < 1e-9 && (c.y + 0.1).abs() < 1e-9);
    }

    #[test]
    fn frame_maps_longest_chord_to_unit_segment() {
        let rect = ConvexRegion::rectangle(2.0, 0.2).unwrap();
        let framed = rect.longest_segment_frame().unwrap();
        let diag = math::sqrt(4.04);
        assert!((framed.map.scale - 1.0 / diag).abs() < 1e-12);
        let vs = framed.framed_polygon.as_ref().unwrap();
        // the diagonal endpoints land on (0,0) and (1,0)
        let on_origin = vs.iter().any(|v| v.norm() < 1e-9);
        let on_one = vs.iter().any(|v| v.dist(Point2::new(1.0, 0.0)) < 1e-9);
        assert!(on_origin && on_one);

        let disk = ConvexRegion::unit_disk();
        let framed = disk.longest_segment_frame().unwrap();
        assert!((framed.map.scale - 0.5).abs() < 1e-9);
    }

    #[test]
    fn height_profile_of_reference_shapes() {
        // framed rectangle 1×h: h̄ = h/w up to O(h²) (≈ h/diag at this scale)
        let rect = ConvexRegion::rectangle(1.0, 0.005).unwrap();
        let profile = rect.longest_segment_frame().unwrap().height_profile(512).unwrap();
        let diag = math::sqrt(1.0 + 0.005 * 0.005);
        assert!((profile.hbar - 0.005 / diag).abs() < 1e-6, "{}", profile.hbar);

        // framed unit disk: h̄ = 1
        let disk = ConvexRegion::unit_disk();
        let profile = disk.longest_segment_frame().unwrap().height_profile(256).unwrap();
        assert!((profile.hbar - 1.0).abs() < 1e-6, "{}", profile.hbar);

        // thin triangle: apex height
        let tri = ConvexRegion::polygon(alloc::vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.5, 0.01),
        ])
        .unwrap();
        let profile = tri.longest_segment_frame().unwrap().height_profile(512).unwrap();
        assert!((profile.hbar - 0.01).abs() < 1e-6);
    }

    #[test]
    fn height_profile_refinement_is_monotone_and_unimodal() {
        let region = cos2_region(0.04);
        let framed = region.longest_segment_frame().unwrap();
        let coarse = framed.height_profile(128).unwrap();
        let fine = framed.height_profile(256).unwrap();
        assert!(fine.hbar >= coarse.hbar - 1e-9);

        // no strict interior local minimum on the sampled grid
        let h = &coarse.heights;
        let support: Vec<usize> = (0..h.len()).filter(|&i| h[i] > 1e-12).collect();
        for w in support.windows(3) {
            let (i, j, k) = (w[0], w[1], w[2]);
            if k - i == 2 {
                assert!(h[j] >= h[i].min(h[k]) - 1e-9);
            }
        }
    }

    #[test]
    fn cap_area_of_unit_disk_matches_closed_form() {
        let shape = RadialGeometry::new(FourierSeries::constant(1.0));
        for &c in &[-0.9, -0.3, 0.0, 0.4, 0.8] {
            let got = shape.cap_area(Point2::new(1.0, 0.0), c);
            let alpha = math::acos_clamped(c);
            let expected = alpha - c * math::sin(alpha);
            assert!((got - expected).abs() < 1e-12, "c={c}: {got} vs {expected}");
        }
        assert_eq!(shape.cap_arc(Point2::new(0.0, 1.0), 1.5), CapArc::Empty);
        assert_eq!(shape.cap_arc(Point2::new(0.0, 1.0), -1.5), CapArc::Full);
    }

    #[test]
    fn support_function_of_offset_disk() {
        let region = ConvexRegion::offset_unit_disk(Point2::new(0.2, 0.0)).unwrap();
        let shape = match &region {
            ConvexRegion::Radial { shape } => shape,
            _ => unreachable!(),
        };
        // support of a unit disk centered at (0.2, 0): h(u) = 1 + 0.2 cos u
        for j in 0..16 {
            let u = math::TAU * j as f64 / 16.0;
            let (_, h) = shape.support(u);
            assert!((h - (1.0 + 0.2 * math::cos(u))).abs() < 1e-9);
        }
    }
}
