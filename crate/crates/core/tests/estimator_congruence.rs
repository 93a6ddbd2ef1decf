//! Statistical congruence-invariance checks for the Monte Carlo estimator
//! and soundness of the height-partition bound on random convex polygons.

use acuteprob_core::estimator::estimate_p;
use acuteprob_core::geom::Point2;
use acuteprob_core::isoperim;
use acuteprob_core::region::ConvexRegion;
use acuteprob_core::rng::Rng;

fn combined_4_sigma(a: f64, b: f64) -> f64 {
    4.0 * (a * a + b * b).sqrt()
}

#[test]
fn estimate_is_congruence_invariant_within_4_sigma() {
    let n = 400_000;
    let seed = 314;

    // uniform scaling of the disk
    let disk = ConvexRegion::unit_disk();
    let scaled = ConvexRegion::disk(5.0).unwrap();
    let a = estimate_p(&disk, n, seed).unwrap();
    let b = estimate_p(&scaled, n, seed).unwrap();
    assert!((a.value - b.value).abs() < combined_4_sigma(a.std_err, b.std_err));

    // rotation + translation + scaling of a thin rectangle
    let rect = ConvexRegion::rectangle(1.0, 0.05).unwrap();
    let moved = rect
        .rotated(0.83)
        .unwrap()
        .scaled(3.0)
        .unwrap()
        .translated(Point2::new(-7.0, 2.5))
        .unwrap();
    let a = estimate_p(&rect, n, seed).unwrap();
    let b = estimate_p(&moved, n, seed).unwrap();
    assert!(
        (a.value - b.value).abs() < combined_4_sigma(a.std_err, b.std_err),
        "{} vs {}",
        a.value,
        b.value
    );

    // rotation of a perturbed radial region
    let g = acuteprob_core::fourier::FourierSeries::harmonic(2, 0.04, 0.0);
    let blob = ConvexRegion::radial_from_deviation(&g).unwrap();
    let turned = blob.rotated(1.2).unwrap();
    let a = estimate_p(&blob, n, seed).unwrap();
    let b = estimate_p(&turned, n, seed).unwrap();
    assert!((a.value - b.value).abs() < combined_4_sigma(a.std_err, b.std_err));
}

#[test]
fn partition_bound_is_sound_on_random_convex_polygons() {
    let mut rng = Rng::from_seed_stream(5150, 0);
    let mut built = 0;
    while built < 50 {
        // convex position: random radii and sorted angles on an ellipse of a
        // random (sometimes extreme) aspect ratio
        let n_vertices = 3 + (rng.next_u64() % 10) as usize;
        let aspect = (rng.uniform_in(0.01_f64.ln(), 0.0)).exp();
        let mut angles: Vec<f64> = (0..n_vertices)
            .map(|_| rng.uniform_in(0.0, core::f64::consts::TAU))
            .collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let vertices: Vec<Point2> = angles
            .iter()
            .map(|&t| Point2::new(t.cos(), aspect * t.sin()))
            .collect();
        let region = match ConvexRegion::polygon(vertices) {
            Ok(region) => region,
            Err(_) => continue, // degenerate draw (nearly collinear); redraw
        };
        let framed = match region.longest_segment_frame() {
            Ok(framed) => framed,
            Err(_) => continue,
        };
        let report = isoperim::partition_bound(&framed).unwrap();
        let est = estimate_p(&region, 200_000, 8080 + built as u64).unwrap();
        assert!(
            est.value <= report.p_upper + 4.0 * est.std_err,
            "polygon {built}: p = {} exceeds bound {} (h̄ = {}, N = {})",
            est.value,
            report.p_upper,
            report.hbar,
            report.n_parts
        );
        built += 1;
    }
}
