//! Property tests for the geometric invariances the estimators rely on.

use acuteprob_core::geom::{Point2, Point3};
use acuteprob_core::triangle::{classify_triangle, classify_triangle_3d, TriangleKind};
use proptest::prelude::*;

fn rotate(p: Point2, phi: f64) -> Point2 {
    Point2::new(
        phi.cos() * p.x - phi.sin() * p.y,
        phi.sin() * p.x + phi.cos() * p.y,
    )
}

fn congruence(p: Point2, phi: f64, shift: (f64, f64), scale: f64, reflect: bool) -> Point2 {
    let p = if reflect { Point2::new(p.x, -p.y) } else { p };
    let p = rotate(p, phi);
    Point2::new(scale * p.x + shift.0, scale * p.y + shift.1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn classification_is_invariant_under_relabeling_and_congruence(
        ax in -1.0f64..1.0, ay in -1.0f64..1.0,
        bx in -1.0f64..1.0, by in -1.0f64..1.0,
        cx in -1.0f64..1.0, cy in -1.0f64..1.0,
        phi in 0.0f64..6.283,
        sx in -5.0f64..5.0, sy in -5.0f64..5.0,
        scale in 0.1f64..10.0,
        reflect in proptest::bool::ANY,
        perm in 0usize..6,
    ) {
        let pts = [Point2::new(ax, ay), Point2::new(bx, by), Point2::new(cx, cy)];
        // keep clearly non-degenerate triangles: angle conditioning degrades
        // near collinearity and the class itself is defined up to tol there
        let ab = pts[0].dist(pts[1]);
        let bc = pts[1].dist(pts[2]);
        let ca = pts[2].dist(pts[0]);
        let longest = ab.max(bc).max(ca);
        prop_assume!(longest > 1e-3);
        prop_assume!(ab + bc + ca - 2.0 * longest > 1e-3 * longest);

        let base = classify_triangle(pts[0], pts[1], pts[2], 1e-12);

        let orders = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let [i, j, k] = orders[perm];
        let relabeled = classify_triangle(pts[i], pts[j], pts[k], 1e-12);
        prop_assert_eq!(base.kind, relabeled.kind);
        prop_assert!((base.largest_angle.unwrap() - relabeled.largest_angle.unwrap()).abs() <= 1e-12);

        let moved: Vec<Point2> = pts
            .iter()
            .map(|&p| congruence(p, phi, (sx, sy), scale, reflect))
            .collect();
        let transformed = classify_triangle(moved[0], moved[1], moved[2], 1e-12);
        prop_assert_eq!(base.kind, transformed.kind);
        prop_assert!(
            (base.largest_angle.unwrap() - transformed.largest_angle.unwrap()).abs() <= 1e-9
        );
    }

    #[test]
    fn planar_and_spatial_classification_agree(
        ax in -1.0f64..1.0, ay in -1.0f64..1.0,
        bx in -1.0f64..1.0, by in -1.0f64..1.0,
        cx in -1.0f64..1.0, cy in -1.0f64..1.0,
        z in -3.0f64..3.0,
    ) {
        let class2 = classify_triangle(
            Point2::new(ax, ay),
            Point2::new(bx, by),
            Point2::new(cx, cy),
            1e-12,
        );
        let class3 = classify_triangle_3d(
            Point3::new(ax, ay, z),
            Point3::new(bx, by, z),
            Point3::new(cx, cy, z),
            1e-12,
        );
        prop_assert_eq!(class2.kind, class3.kind);
    }

    #[test]
    fn right_band_is_respected(
        leg in 0.1f64..2.0,
    ) {
        let class = classify_triangle(
            Point2::new(0.0, 0.0),
            Point2::new(leg, 0.0),
            Point2::new(0.0, leg),
            1e-12,
        );
        prop_assert_eq!(class.kind, TriangleKind::Right);
    }
}
