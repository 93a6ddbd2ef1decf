//! Triangle classification by largest interior angle.
//!
//! The class is computed from the three squared side lengths, so it is exactly
//! symmetric in the vertices and invariant under congruences and uniform
//! scaling up to rounding. Works identically in the plane and in space.

use crate::geom::{Point2, Point3};
use crate::math;

pub const DEFAULT_ANGLE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriangleKind {
    Acute,
    Right,
    Obtuse,
    Degenerate,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TriangleClass {
    pub kind: TriangleKind,
    /// Largest interior angle in `[π/3, π]`; `None` for degenerate input.
    pub largest_angle: Option<f64>,
}

impl TriangleClass {
    /// Largest angle with the convention that degenerate triples count as
    /// flat (`π`). This is what the largest-angle CDF estimator uses.
    pub fn largest_angle_or_flat(&self) -> f64 {
        self.largest_angle.unwrap_or(math::PI)
    }

    pub fn is_acute(&self) -> bool {
        self.kind == TriangleKind::Acute
    }
}

/// Classify the triangle with vertices `p1, p2, p3`.
///
/// A triple is degenerate when two vertices coincide or all three are
/// collinear within `tol` (relative to the longest side). The largest angle
/// sits opposite the longest side; it is `right` when within `tol` of `π/2`,
/// and right triangles are deliberately not acute (the boundary case has
/// measure zero, and ties break toward the closed upper set `{angle ≤ φ}`).
pub fn classify_triangle(p1: Point2, p2: Point2, p3: Point2, tol: f64) -> TriangleClass {
    classify_from_squared_sides(
        p1.dist_squared(p2),
        p2.dist_squared(p3),
        p3.dist_squared(p1),
        tol,
    )
}

/// Spatial version of [`classify_triangle`].
pub fn classify_triangle_3d(p1: Point3, p2: Point3, p3: Point3, tol: f64) -> TriangleClass {
    classify_from_squared_sides(
        p1.dist_squared(p2),
        p2.dist_squared(p3),
        p3.dist_squared(p1),
        tol,
    )
}

pub fn classify_from_squared_sides(s1: f64, s2: f64, s3: f64, tol: f64) -> TriangleClass {
    let tol = if tol >= 0.0 { tol } else { DEFAULT_ANGLE_TOL };
    let mut sq = [s1, s2, s3];
    sq.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let [c_sq, b_sq, a_sq] = sq; // a ≥ b ≥ c
    let a = math::sqrt(a_sq);
    let b = math::sqrt(b_sq);
    let c = math::sqrt(c_sq);
    if !(a.is_finite() && a > 0.0) {
        return TriangleClass {
            kind: TriangleKind::Degenerate,
            largest_angle: None,
        };
    }
    // coincident vertices or collinear triple
    if c <= tol * a || (b + c - a) <= tol * a {
        return TriangleClass {
            kind: TriangleKind::Degenerate,
            largest_angle: None,
        };
    }
    let cos_largest = (b_sq + c_sq - a_sq) / (2.0 * b * c);
    let largest = math::acos_clamped(cos_largest);
    let kind = if math::abs(largest - 0.5 * math::PI) <= tol {
        TriangleKind::Right
    } else if largest < 0.5 * math::PI {
        TriangleKind::Acute
    } else {
        TriangleKind::Obtuse
    };
    TriangleClass {
        kind,
        largest_angle: Some(largest),
    }
}
