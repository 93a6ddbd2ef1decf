//! One-dimensional quadrature building blocks: Gauss–Legendre rules, an
//! adaptive bisection driver, and the periodic trapezoid rule.

use alloc::vec::Vec;

use crate::math;

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
///
/// Nodes are the roots of `P_n`, found by Newton iteration from the Chebyshev
/// initial guess; weights are `2 / ((1 - x²) P_n'(x)²)`.
#[derive(Clone, Debug)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = alloc::vec![0.0; n];
        let mut weights = alloc::vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Chebyshev-like initial guess for the i-th root (descending).
            let mut x = math::cos(math::PI * (i as f64 + 0.75) / (n as f64 + 0.5));
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                let dx = p / d;
                x -= dx;
                if math::abs(dx) < 1e-15 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
            let (_, d) = legendre_with_derivative(n, 0.0);
            weights[n / 2] = 2.0 / (d * d);
        }
        GaussRule { nodes, weights }
    }

    /// Integrate `f` over `[a, b]` with this rule.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut sum = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            sum += w * f(mid + half * x);
        }
        sum * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut pm1 = 1.0;
    let mut p = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * pm1) / kf;
        pm1 = p;
        p = next;
    }
    let d = n as f64 * (x * p - pm1) / (x * x - 1.0);
    (p, d)
}

/// Adaptive quadrature of `f` on `[a, b]` to absolute tolerance `tol`.
///
/// Each interval is estimated with GL(10) and GL(20); the difference drives
/// bisection. Piecewise-analytic integrands with isolated kinks converge
/// quickly; a depth cap guards against non-integrable inputs.
pub fn integrate_adaptive<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64, tol: f64) -> f64 {
    let low = GaussRule::new(10);
    let high = GaussRule::new(20);
    let mut total = 0.0;
    // (a, b, local tolerance, depth)
    let mut stack: Vec<(f64, f64, f64, u32)> = alloc::vec![(a, b, tol.max(1e-15), 0)];
    while let Some((a, b, tol, depth)) = stack.pop() {
        let coarse = low.integrate(a, b, &mut *f);
        let fine = high.integrate(a, b, &mut *f);
        let err = math::abs(fine - coarse);
        if err <= tol || depth >= 48 {
            total += fine;
        } else {
            let mid = 0.5 * (a + b);
            let half_tol = 0.5 * tol;
            stack.push((a, mid, half_tol, depth + 1));
            stack.push((mid, b, half_tol, depth + 1));
        }
    }
    total
}

/// Periodic trapezoid rule over `[0, 2π)` with `n` equispaced samples.
///
/// Exact (to rounding) for trigonometric polynomials of degree `< n/2`, and
/// spectrally accurate for smooth periodic integrands.
pub fn periodic_trapezoid<F: FnMut(f64) -> f64>(n: usize, mut f: F) -> f64 {
    let h = math::TAU / n as f64;
    let mut sum = 0.0;
    for j in 0..n {
        sum += f(j as f64 * h);
    }
    sum * h
}
