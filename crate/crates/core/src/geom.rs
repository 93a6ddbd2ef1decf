//! Planar and spatial primitives: points, similarity transforms, and the
//! exact polygon machinery (area, perimeter, convexity, clipping, and
//! circle-intersection area) used by the region and quadrature layers.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }
    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
    #[inline]
    pub fn dot(&self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }
    #[inline]
    pub fn cross(&self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }
    #[inline]
    pub fn norm(&self) -> f64 {
        math::hypot(self.x, self.y)
    }
    #[inline]
    pub fn norm_squared(&self) -> f64 {
        self.x * self.x + self.y * self.y
    }
    #[inline]
    pub fn sub(&self, other: Point2) -> Point2 {
        Point2::new(self.x - other.x, self.y - other.y)
    }
    #[inline]
    pub fn add(&self, other: Point2) -> Point2 {
        Point2::new(self.x + other.x, self.y + other.y)
    }
    #[inline]
    pub fn scale(&self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
    #[inline]
    pub fn dist(&self, other: Point2) -> f64 {
        self.sub(other).norm()
    }
    #[inline]
    pub fn dist_squared(&self, other: Point2) -> f64 {
        self.sub(other).norm_squared()
    }
    #[inline]
    pub fn angle(&self) -> f64 {
        math::atan2(self.y, self.x)
    }
}

impl Point3 {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }
    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
    #[inline]
    pub fn norm_squared(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }
    #[inline]
    pub fn dist_squared(&self, other: Point3) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let dz = self.z - other.z;
        dx * dx + dy * dy + dz * dz
    }
}

/// Orientation-preserving similarity `z ↦ scale · R(angle) · z + shift`.
#[derive(Clone, Copy, Debug)]
pub struct Similarity2 {
    pub scale: f64,
    pub angle: f64,
    pub shift: Point2,
}

impl Similarity2 {
    pub fn identity() -> Self {
        Similarity2 {
            scale: 1.0,
            angle: 0.0,
            shift: Point2::new(0.0, 0.0),
        }
    }

    pub fn apply(&self, p: Point2) -> Point2 {
        let (s, c) = math::sincos(self.angle);
        Point2::new(
            self.scale * (c * p.x - s * p.y) + self.shift.x,
            self.scale * (s * p.x + c * p.y) + self.shift.y,
        )
    }

    pub fn inverse(&self) -> Similarity2 {
        let inv_scale = 1.0 / self.scale;
        let (s, c) = math::sincos(-self.angle);
        let shifted = Point2::new(-self.shift.x, -self.shift.y);
        Similarity2 {
            scale: inv_scale,
            angle: -self.angle,
            shift: Point2::new(
                inv_scale * (c * shifted.x - s * shifted.y),
                inv_scale * (s * shifted.x + c * shifted.y),
            ),
        }
    }
}

/// Signed area of a closed polygon (positive when counter-clockwise).
pub fn polygon_signed_area(vertices: &[Point2]) -> f64 {
    let n = vertices.len();
    let mut sum = 0.0;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        sum += a.cross(b);
    }
    0.5 * sum
}

pub fn polygon_perimeter(vertices: &[Point2]) -> f64 {
    let n = vertices.len();
    (0..n)
        .map(|i| vertices[i].dist(vertices[(i + 1) % n]))
        .sum()
}

pub fn polygon_centroid(vertices: &[Point2]) -> Point2 {
    let n = vertices.len();
    let mut cx = 0.0;
    let mut cy = 0.0;
    let mut area = 0.0;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        let w = a.cross(b);
        area += w;
        cx += (a.x + b.x) * w;
        cy += (a.y + b.y) * w;
    }
    area *= 0.5;
    Point2::new(cx / (6.0 * area), cy / (6.0 * area))
}

/// Validate counter-clockwise order and strict convexity (cross products of
/// consecutive edges nonnegative up to `-1e-12 · scale²`).
pub fn validate_convex_ccw(vertices: &[Point2]) -> Result<()> {
    if vertices.len() < 3 {
        return Err(Error::InvalidRegion(
            "polygon needs at least 3 vertices".into(),
        ));
    }
    if vertices.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidRegion("polygon vertex not finite".into()));
    }
    let scale_sq = vertices
        .iter()
        .map(|v| v.norm_squared())
        .fold(0.0_f64, f64::max)
        .max(1e-300);
    let n = vertices.len();
    let mut has_turn = false;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        let c = vertices[(i + 2) % n];
        let cross = b.sub(a).cross(c.sub(b));
        if cross < -1e-12 * scale_sq {
            return Err(Error::InvalidRegion(
                "polygon vertices must be in counter-clockwise convex position".into(),
            ));
        }
        if cross > 1e-12 * scale_sq {
            has_turn = true;
        }
    }
    if !has_turn || polygon_signed_area(vertices) <= 0.0 {
        return Err(Error::InvalidRegion("polygon is degenerate".into()));
    }
    Ok(())
}

pub fn point_in_convex_polygon(vertices: &[Point2], p: Point2) -> bool {
    let n = vertices.len();
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        if b.sub(a).cross(p.sub(a)) < 0.0 {
            return false;
        }
    }
    true
}

/// Clip a convex polygon by the half-plane `{ z : z·n ≤ c }`
/// (Sutherland–Hodgman, one plane).
pub fn clip_polygon_halfplane(vertices: &[Point2], n_dir: Point2, c: f64) -> Vec<Point2> {
    let mut out = Vec::with_capacity(vertices.len() + 2);
    let m = vertices.len();
    for i in 0..m {
        let a = vertices[i];
        let b = vertices[(i + 1) % m];
        let da = a.dot(n_dir) - c;
        let db = b.dot(n_dir) - c;
        if da <= 0.0 {
            out.push(a);
            if db > 0.0 {
                let t = da / (da - db);
                out.push(a.add(b.sub(a).scale(t)));
            }
        } else if db <= 0.0 {
            let t = da / (da - db);
            out.push(a.add(b.sub(a).scale(t)));
        }
    }
    out
}

/// Area of the intersection of a convex polygon with the disk of radius `r`
/// centered at `center`.
///
/// Decomposes the polygon into signed triangles `(center, a, b)` and clips
/// each against the circle; exact up to rounding, valid for any crossing
/// pattern.
pub fn polygon_circle_intersection_area(vertices: &[Point2], center: Point2, r: f64) -> f64 {
    let n = vertices.len();
    let mut total = 0.0;
    for i in 0..n {
        let a = vertices[i].sub(center);
        let b = vertices[(i + 1) % n].sub(center);
        total += circle_triangle_area(a, b, r);
    }
    total
}

/// Signed area of `triangle(0, a, b) ∩ disk(0, r)`.
fn circle_triangle_area(a: Point2, b: Point2, r: f64) -> f64 {
    let r_sq = r * r;
    let a_in = a.norm_squared() <= r_sq;
    let b_in = b.norm_squared() <= r_sq;
    if a_in && b_in {
        return 0.5 * a.cross(b);
    }
    // Intersect the segment a→b with the circle.
    let d = b.sub(a);
    let dd = d.norm_squared();
    if dd == 0.0 {
        return if a_in { 0.5 * a.cross(b) } else { sector_area(a, b, r) };
    }
    let t0 = -a.dot(d) / dd;
    let disc = t0 * t0 - (a.norm_squared() - r_sq) / dd;
    if disc <= 0.0 {
        // no chord: whole edge outside, contribute the circular sector
        return sector_area(a, b, r);
    }
    let root = math::sqrt(disc);
    let t1 = t0 - root;
    let t2 = t0 + root;
    let p1 = a.add(d.scale(t1));
    let p2 = a.add(d.scale(t2));
    match (a_in, b_in) {
        (true, false) => {
            // leaves the disk at t2
            0.5 * a.cross(p2) + sector_area(p2, b, r)
        }
        (false, true) => {
            // enters the disk at t1
            sector_area(a, p1, r) + 0.5 * p1.cross(b)
        }
        (false, false) => {
            if t1 > 0.0 && t2 < 1.0 {
                // passes through the disk
                sector_area(a, p1, r) + 0.5 * p1.cross(p2) + sector_area(p2, b, r)
            } else {
                sector_area(a, b, r)
            }
        }
        (true, true) => unreachable!(),
    }
}

/// Signed circular-sector area between directions `a` and `b` (radius `r`),
/// using the signed angle from `a` to `b` in `(-π, π]`.
fn sector_area(a: Point2, b: Point2, r: f64) -> f64 {
    let angle = math::atan2(a.cross(b), a.dot(b));
    0.5 * r * r * angle
}

/// Longest chord of a convex polygon: the diameter is attained between two
/// vertices, so scan vertex pairs.
pub fn polygon_diameter(vertices: &[Point2]) -> (Point2, Point2, f64) {
    let mut best = (vertices[0], vertices[0], 0.0);
    for i in 0..vertices.len() {
        for j in (i + 1)..vertices.len() {
            let d = vertices[i].dist(vertices[j]);
            if d > best.2 {
                best = (vertices[i], vertices[j], d);
            }
        }
    }
    best
}
