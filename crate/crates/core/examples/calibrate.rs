//! Development probe: measures the quadrature accuracy ladder, the
//! finite-difference curvature of p along single-mode homotopies against the
//! spectral prediction, and the 3-ball Monte Carlo reference value.

use acuteprob_core::ball3;
use acuteprob_core::disk;
use acuteprob_core::fourier::FourierSeries;
use acuteprob_core::quadp::quadrature_p;
use acuteprob_core::region::ConvexRegion;
use acuteprob_core::variation::{
    barrier_check, homotopy_trace, p2_at_zero, second_variation_spectral, spectral_p2_prediction,
    Homotopy, QuadratureEval,
};
use std::time::Instant;

fn main() {
    let exact = disk::p_disk();
    println!("== disk quadrature ladder (exact {exact:.12})");
    for res in [1u32, 2, 3, 4] {
        let t0 = Instant::now();
        let p = quadrature_p(&ConvexRegion::unit_disk(), res).unwrap();
        println!(
            "res {res}: p = {p:.12}  err = {:+.3e}  ({:?})",
            p - exact,
            t0.elapsed()
        );
    }

    println!("== single-mode FD curvature vs spectral prediction");
    for k in 2..=6usize {
        // convexity needs roughly amp·(k²-1) < 1
        let amp = (0.05_f64).min(0.7 / (k * k - 1) as f64);
        let g = FourierSeries::harmonic(k, amp, 0.0);
        let region = ConvexRegion::radial_from_deviation(&g).unwrap();
        let homotopy = Homotopy::new(&region).unwrap();
        let h = 0.8 * homotopy.g_norm;
        for res in [2u32] {
            let t0 = Instant::now();
            let (fd, budget) = p2_at_zero(&homotopy, &QuadratureEval { resolution: res }, h).unwrap();
            let literal = second_variation_spectral(&g).unwrap();
            let predicted = spectral_p2_prediction(&g).unwrap();
            println!(
                "k={k} res={res}: fd p''(0) = {fd:+.6} ± {budget:.1e}  predicted {predicted:+.6}  ratio {:.4}  literal-sum {literal:+.4}  ({:?})",
                fd / predicted,
                t0.elapsed()
            );
        }
    }

    println!("== barrier traces");
    for (k, amp) in [(2usize, 0.05), (3usize, 0.04)] {
        let g = FourierSeries::harmonic(k, amp, 0.0);
        let region = ConvexRegion::radial_from_deviation(&g).unwrap();
        let homotopy = Homotopy::new(&region).unwrap();
        let grid: Vec<f64> = (0..=8).map(|i| homotopy.g_norm * i as f64 / 8.0).collect();
        let t0 = Instant::now();
        let trace = homotopy_trace(&homotopy, &grid, &QuadratureEval { resolution: 2 }).unwrap();
        let report = barrier_check(&trace, 2e-4).unwrap();
        let min_margin = report.margins.iter().cloned().fold(f64::INFINITY, f64::min);
        let end_drop = exact - report.p.last().unwrap();
        println!(
            "mode {k} amp {amp}: passes={} below_disk={} min_margin={min_margin:.2e} end_drop={end_drop:.3e} ({:?})",
            report.passes_barrier, report.below_disk, t0.elapsed()
        );
    }

    println!("== translated/dilated disk null curvature");
    {
        // family through offset disks, direct (no normalization)
        let eval = QuadratureEval { resolution: 2 };
        let p0 = quadrature_p(&ConvexRegion::unit_disk(), 2).unwrap();
        let mut worst: f64 = 0.0;
        for i in 1..=4 {
            let c = 0.005 * i as f64;
            let region =
                ConvexRegion::offset_unit_disk(acuteprob_core::geom::Point2::new(c, 0.0)).unwrap();
            let p = quadrature_p(&region, 2).unwrap();
            worst = worst.max((p - p0).abs());
        }
        for i in 1..=4 {
            let s = 1.0 + 0.005 * i as f64;
            let p = quadrature_p(&ConvexRegion::disk(s).unwrap(), 2).unwrap();
            worst = worst.max((p - p0).abs());
        }
        let _ = eval;
        println!("max |p - p_disk| over the families: {worst:.3e}");
    }

    println!("== square cross-check");
    {
        let square = ConvexRegion::rectangle(1.0, 1.0).unwrap();
        let t0 = Instant::now();
        let pq = quadrature_p(&square, 2).unwrap();
        println!("quadrature square: {pq:.8} ({:?})", t0.elapsed());
        let est = acuteprob_core::estimator::estimate_p(&square, 2_000_000, 33).unwrap();
        println!("mc square: {:.8} ± {:.1e}", est.value, est.std_err);
    }

    println!("== 3-ball reference (1e7 samples, seed 20250807)");
    {
        let t0 = Instant::now();
        let est = ball3::estimate_p_ball(10_000_000, 20_250_807).unwrap();
        println!(
            "p(ball3) = {:.7} ± {:.2e}  ({:?})",
            est.value,
            est.std_err,
            t0.elapsed()
        );
    }

    println!("== disk MC (1e7, seed 7)");
    {
        let t0 = Instant::now();
        let est =
            acuteprob_core::estimator::estimate_p(&ConvexRegion::unit_disk(), 10_000_000, 7).unwrap();
        println!(
            "p(disk) = {:.7} ± {:.2e}  err {:+.2e} ({:?})",
            est.value,
            est.std_err,
            est.value - exact,
            t0.elapsed()
        );
    }
}
