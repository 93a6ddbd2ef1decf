//! Closed-form quantities for the unit disk.
//!
//! With two vertices `X`, `Y` fixed, the third vertex `z` makes an acute
//! triangle exactly when `z` lies strictly between the two perpendiculars to
//! `XY` through `X` and `Y` (acute at `X` and `Y`) and outside the circle
//! with diameter `XY` (acute at `z`, by Thales). The acute-locus area inside
//! the disk is therefore a strip area minus a circle-circle lens area, and
//! for boundary vertices at angular separation `θ` it collapses to the
//! classical formula `A2(θ) = θ/2 + (3/2)sin θ - π/4 + (π/4)cos θ`.

use crate::error::{Error, Result};
use crate::geom::Point2;
use crate::math;

/// Exact probability that three uniform points in a disk form an acute
/// triangle: `4/π² - 1/8`.
pub fn p_disk() -> f64 {
    4.0 / (math::PI * math::PI) - 0.125
}

/// The positive constant `L = (3/(4π))(π² - 8)π² = (3π/4)(π² - 8)` from the
/// distributional boundary term, computed via the translation trick.
pub fn l_constant() -> f64 {
    0.75 * math::PI * (math::PI * math::PI - 8.0)
}

/// Conditional acute mass `A2(θ)` for two boundary points separated by `θ`.
///
/// Piecewise formula on `(0, π)`, reflected through `θ = π`; arguments
/// outside `[0, 2π]` are reduced mod `2π`.
pub fn a2_mass(theta: f64) -> f64 {
    let t = math::wrap_angle(theta);
    let t = if t > math::PI { math::TAU - t } else { t };
    let value = 0.5 * t + 1.5 * math::sin(t) - 0.25 * math::PI + 0.25 * math::PI * math::cos(t);
    if value < 0.0 && value > -1e-13 {
        0.0
    } else {
        value
    }
}

/// Fourier coefficients `a_n = (1/2π) ∫ A2(θ) cos(nθ) dθ`.
///
/// `a_0 = 3/π` and `a_1 = (π² - 8)/(8π)` are positive; for `n ≥ 2` the closed
/// form is strictly negative (`-3/(π(n²-1))` at even `n`, `-1/(πn²)` at odd).
pub fn a2_fourier_coeff(n: u32) -> f64 {
    let pi = math::PI;
    match n {
        0 => 3.0 / pi,
        1 => (pi * pi - 8.0) / (8.0 * pi),
        _ => {
            let nf = n as f64;
            let n2 = nf * nf;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            (sign * (-2.0 - 4.0 * n2 + (2.0 - 8.0 * n2) * sign))
                / (2.0 * pi * 2.0 * n2 * (n2 - 1.0))
        }
    }
}

/// Area of the part of the unit disk lying past the chord `z·e = c`
/// (cumulative from the left: area of `{z ∈ D : z·e < c}`).
fn disk_area_below(c: f64) -> f64 {
    if c <= -1.0 {
        0.0
    } else if c >= 1.0 {
        math::PI
    } else {
        0.5 * math::PI + c * math::sqrt(1.0 - c * c) + math::asin(c)
    }
}

/// Intersection area of the unit disk (centered at the origin) with a disk
/// of radius `rho` whose center is at distance `d` from the origin.
///
/// The radical term is the standard nonnegative lens product
/// `(-d+ρ+1)(d+ρ-1)(d-ρ+1)(d+ρ+1)`; `arccos` arguments are clamped against
/// end-of-case rounding.
pub fn unit_disk_lens_area(d: f64, rho: f64) -> f64 {
    if rho <= 0.0 {
        return 0.0;
    }
    if d >= 1.0 + rho {
        return 0.0;
    }
    if d <= (1.0 - rho).max(rho - 1.0) {
        // one disk inside the other
        return math::PI * rho.min(1.0) * rho.min(1.0);
    }
    let d2 = d * d;
    let r2 = rho * rho;
    let alpha = math::acos_clamped((d2 + 1.0 - r2) / (2.0 * d));
    let beta = math::acos_clamped((d2 + r2 - 1.0) / (2.0 * d * rho));
    let product = (-d + rho + 1.0) * (d + rho - 1.0) * (d - rho + 1.0) * (d + rho + 1.0);
    alpha + r2 * beta - 0.5 * math::sqrt(product.max(0.0))
}

/// Area of `{z ∈ unit disk : triangle XYz is acute}`.
///
/// Full case analysis is inherited from the two primitives: chords that miss
/// the disk saturate the strip term, and the lens handles the
/// inside/outside/overlap cases of the Thales circle.
pub fn acute_locus_area_in_disk(x: Point2, y: Point2) -> Result<f64> {
    if !(x.is_finite() && y.is_finite()) {
        return Err(Error::InvalidArgument("vertices must be finite".into()));
    }
    if x.norm() > 2.0 || y.norm() > 2.0 {
        return Err(Error::InvalidArgument(
            "vertices must lie within distance 2 of the origin".into(),
        ));
    }
    let diff = y.sub(x);
    let len = diff.norm();
    if len < 1e-12 {
        return Err(Error::InvalidArgument(
            "degenerate pair: |X - Y| below tolerance".into(),
        ));
    }
    Ok(acute_locus_area_unchecked(x, y, len))
}

#[inline]
pub(crate) fn acute_locus_area_unchecked(x: Point2, y: Point2, len: f64) -> f64 {
    let e = y.sub(x).scale(1.0 / len);
    let p1 = x.dot(e);
    let p2 = y.dot(e);
    let strip = disk_area_below(p2) - disk_area_below(p1);
    let mid = Point2::new(0.5 * (x.x + y.x), 0.5 * (x.y + y.y));
    let lens = unit_disk_lens_area(mid.norm(), 0.5 * len);
    (strip - lens).max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::integrate_adaptive;

    #[test]
    fn p_disk_value() {
        assert!((p_disk() - 0.280_284_734_569_351_1).abs() < 1e-15);
    }

    #[test]
    fn a2_reference_values() {
        assert!(a2_mass(0.0).abs() < 1e-14);
        assert!(a2_mass(math::PI).abs() < 1e-14);
        assert!(a2_mass(math::TAU).abs() < 1e-14);
        assert!((a2_mass(0.5 * math::PI) - 1.5).abs() < 1e-15);
        // even about θ = π, periodic reduction
        for j in 0..64 {
            let t = math::TAU * (j as f64 + 0.5) / 64.0;
            assert!((a2_mass(t) - a2_mass(math::TAU - t)).abs() < 1e-13);
            assert!((a2_mass(t) - a2_mass(t + math::TAU)).abs() < 1e-13);
            assert!(a2_mass(t) >= 0.0);
        }
    }

    #[test]
    fn a2_integrates_to_six() {
        let total = 2.0 * integrate_adaptive(&mut |t: f64| a2_mass(t), 0.0, math::PI, 1e-12);
        assert!((total - 6.0).abs() < 1e-10, "{total}");
    }

    #[test]
    fn fourier_coefficients_reference_values() {
        assert!((a2_fourier_coeff(0) - 3.0 / math::PI).abs() < 1e-15);
        assert!((a2_fourier_coeff(1) - (math::PI * math::PI - 8.0) / (8.0 * math::PI)).abs() < 1e-15);
        assert!((a2_fourier_coeff(2) + 1.0 / math::PI).abs() < 1e-15);
        assert!((a2_fourier_coeff(3) + 1.0 / (9.0 * math::PI)).abs() < 1e-15);
        for n in 2..=100 {
            assert!(a2_fourier_coeff(n) < 0.0, "a_{n} should be negative");
            // simplified even/odd forms
            let nf = n as f64;
            let simple = if n % 2 == 0 {
                -3.0 / (math::PI * (nf * nf - 1.0))
            } else {
                -1.0 / (math::PI * nf * nf)
            };
            assert!((a2_fourier_coeff(n) - simple).abs() < 1e-15);
        }
    }

    #[test]
    fn fourier_coefficients_match_quadrature_projection() {
        for n in 0..=100u32 {
            let mut f = |t: f64| a2_mass(t) * math::cos(n as f64 * t);
            // A2 is analytic on (0, π); integrate there and double (evenness)
            let projected = 2.0 * integrate_adaptive(&mut f, 0.0, math::PI, 1e-13) / math::TAU;
            assert!(
                (projected - a2_fourier_coeff(n)).abs() < 1e-9,
                "n={n}: {projected} vs {}",
                a2_fourier_coeff(n)
            );
        }
    }

    #[test]
    fn l_constant_identities() {
        let l = l_constant();
        assert!((l - 4.405_151_588_686_104).abs() < 1e-12);
        // L = 6π² a₁ exactly
        let via_a1 = 6.0 * math::PI * math::PI * a2_fourier_coeff(1);
        assert!((l - via_a1).abs() < 1e-12);
        // the L identity by honest nested quadrature:
        // 6 ∫_0^π ∫_0^{2π} cos(u) cos(u+θ) du A2(θ) dθ = (3/(4π))(π²-8)π²;
        // over the full θ range the same integral double-counts the θ ↔ 2π-θ
        // symmetry and gives exactly 2L
        let target = 3.0 / (4.0 * math::PI) * (math::PI * math::PI - 8.0) * math::PI * math::PI;
        let mut outer = |theta: f64| {
            let inner = crate::quad::periodic_trapezoid(64, |u| math::cos(u) * math::cos(u + theta));
            inner * a2_mass(theta)
        };
        let half_range = integrate_adaptive(&mut outer, 0.0, math::PI, 1e-11);
        assert!(
            (6.0 * half_range - target).abs() < 1e-8,
            "double integral {} vs {target}",
            6.0 * half_range
        );
        let full_range = integrate_adaptive(&mut outer, 0.0, math::TAU, 1e-11);
        assert!((6.0 * full_range - 2.0 * target).abs() < 1e-8);
    }

    #[test]
    fn lens_area_limit_cases() {
        assert_eq!(unit_disk_lens_area(3.0, 1.0), 0.0);
        assert!((unit_disk_lens_area(0.0, 0.5) - math::PI * 0.25).abs() < 1e-15);
        assert!((unit_disk_lens_area(0.0, 2.0) - math::PI).abs() < 1e-15);
        // two unit disks at distance 1: lens = 2π/3 - √3/2
        let expected = 2.0 * math::PI / 3.0 - math::sqrt(3.0) / 2.0;
        assert!((unit_disk_lens_area(1.0, 1.0) - expected).abs() < 1e-12);
    }

    #[test]
    fn acute_locus_reference_pairs() {
        // antipodal diameter: strip covers the disk, Thales circle is the disk
        let a = acute_locus_area_in_disk(Point2::new(1.0, 0.0), Point2::new(-1.0, 0.0)).unwrap();
        assert!(a.abs() < 1e-12);
        // boundary points at right angle: equals A2(π/2) = 3/2
        let a = acute_locus_area_in_disk(Point2::new(1.0, 0.0), Point2::new(0.0, 1.0)).unwrap();
        assert!((a - 1.5).abs() < 1e-12);
        // degenerate pair rejected
        assert!(acute_locus_area_in_disk(Point2::new(0.3, 0.3), Point2::new(0.3, 0.3)).is_err());
        assert!(acute_locus_area_in_disk(Point2::new(3.0, 0.0), Point2::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn acute_locus_matches_a2_on_boundary_grid() {
        for j in 1..256 {
            let theta = math::PI * j as f64 / 256.0;
            let x = Point2::new(1.0, 0.0);
            let y = Point2::new(math::cos(theta), math::sin(theta));
            let locus = acute_locus_area_in_disk(x, y).unwrap();
            assert!(
                (locus - a2_mass(theta)).abs() < 1e-10,
                "θ={theta}: {locus} vs {}",
                a2_mass(theta)
            );
        }
    }

    #[test]
    fn acute_locus_symmetry_and_rotation_invariance() {
        let mut rng = crate::rng::Rng::from_seed_stream(5, 0);
        for _ in 0..200 {
            let x = Point2::new(rng.uniform_in(-1.1, 1.1), rng.uniform_in(-1.1, 1.1));
            let y = Point2::new(rng.uniform_in(-1.1, 1.1), rng.uniform_in(-1.1, 1.1));
            if x.dist(y) < 1e-6 {
                continue;
            }
            let a_xy = acute_locus_area_in_disk(x, y).unwrap();
            let a_yx = acute_locus_area_in_disk(y, x).unwrap();
            assert!((a_xy - a_yx).abs() < 1e-12);
            assert!((0.0..=math::PI + 1e-12).contains(&a_xy));
            let phi = rng.uniform_in(0.0, math::TAU);
            let (s, c) = math::sincos(phi);
            let rot = |p: Point2| Point2::new(c * p.x - s * p.y, s * p.x + c * p.y);
            let a_rot = acute_locus_area_in_disk(rot(x), rot(y)).unwrap();
            assert!((a_xy - a_rot).abs() < 1e-12, "{a_xy} vs {a_rot}");
        }
    }
}
