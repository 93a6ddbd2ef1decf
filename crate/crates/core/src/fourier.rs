//! Real trigonometric polynomials `μ(θ) = Σ c_k cos(kθ) + d_k sin(kθ)`.
//!
//! These represent boundary perturbations of the disk and, with a constant
//! term near 1, the radial function of a star-shaped region. Coefficients are
//! stored densely with matching indices (`sin[0]` is identically zero).

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

#[derive(Clone, Debug, PartialEq)]
pub struct FourierSeries {
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl FourierSeries {
    /// Build from cosine coefficients `c_0..c_K` and sine coefficients
    /// `d_1..d_K` (the `d_0` slot does not exist in the basis).
    pub fn new(cos: Vec<f64>, sin_from_1: Vec<f64>) -> Result<Self> {
        if cos.is_empty() {
            return Err(Error::InvalidArgument(
                "fourier series needs at least the constant term".into(),
            ));
        }
        let degree = (cos.len() - 1).max(sin_from_1.len());
        let mut c = alloc::vec![0.0; degree + 1];
        let mut s = alloc::vec![0.0; degree + 1];
        c[..cos.len()].copy_from_slice(&cos);
        s[1..=sin_from_1.len()].copy_from_slice(&sin_from_1);
        let series = FourierSeries { cos: c, sin: s };
        if !series.is_finite() {
            return Err(Error::InvalidArgument(
                "fourier coefficients must be finite".into(),
            ));
        }
        Ok(series)
    }

    pub fn zero(degree: usize) -> Self {
        FourierSeries {
            cos: alloc::vec![0.0; degree + 1],
            sin: alloc::vec![0.0; degree + 1],
        }
    }

    pub fn constant(c0: f64) -> Self {
        FourierSeries {
            cos: alloc::vec![c0],
            sin: alloc::vec![0.0],
        }
    }

    /// A single harmonic `c·cos(kθ) + d·sin(kθ)`.
    pub fn harmonic(k: usize, c: f64, d: f64) -> Self {
        let mut series = FourierSeries::zero(k);
        series.cos[k] = c;
        if k > 0 {
            series.sin[k] = d;
        }
        series
    }

    pub fn degree(&self) -> usize {
        self.cos.len() - 1
    }

    pub fn cos_coeff(&self, k: usize) -> f64 {
        self.cos.get(k).copied().unwrap_or(0.0)
    }

    pub fn sin_coeff(&self, k: usize) -> f64 {
        self.sin.get(k).copied().unwrap_or(0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.cos.iter().chain(self.sin.iter()).all(|v| v.is_finite())
    }

    /// Evaluate at `θ` by rotating `(cos kθ, sin kθ)` up the harmonics.
    pub fn eval(&self, theta: f64) -> f64 {
        let (s1, c1) = math::sincos(theta);
        let mut ck = 1.0;
        let mut sk = 0.0;
        let mut sum = self.cos[0];
        for k in 1..self.cos.len() {
            let c_next = ck * c1 - sk * s1;
            let s_next = sk * c1 + ck * s1;
            ck = c_next;
            sk = s_next;
            sum += self.cos[k] * ck + self.sin[k] * sk;
        }
        sum
    }

    /// Evaluate the series and its derivative with a single angle reduction.
    pub fn eval_with_derivative(&self, theta: f64) -> (f64, f64) {
        let (s1, c1) = math::sincos(theta);
        let mut ck = 1.0;
        let mut sk = 0.0;
        let mut value = self.cos[0];
        let mut deriv = 0.0;
        for k in 1..self.cos.len() {
            let c_next = ck * c1 - sk * s1;
            let s_next = sk * c1 + ck * s1;
            ck = c_next;
            sk = s_next;
            value += self.cos[k] * ck + self.sin[k] * sk;
            deriv += k as f64 * (self.sin[k] * ck - self.cos[k] * sk);
        }
        (value, deriv)
    }

    /// Derivative as a new series: `μ' = Σ k d_k cos(kθ) - k c_k sin(kθ)`.
    pub fn derivative(&self) -> FourierSeries {
        let n = self.cos.len();
        let mut cos = alloc::vec![0.0; n];
        let mut sin = alloc::vec![0.0; n];
        for k in 1..n {
            cos[k] = k as f64 * self.sin[k];
            sin[k] = -(k as f64) * self.cos[k];
        }
        FourierSeries { cos, sin }
    }

    /// `∫_0^θ μ(u) du`, exact from the coefficients.
    pub fn integral(&self, theta: f64) -> f64 {
        let (s1, c1) = math::sincos(theta);
        let mut ck = 1.0;
        let mut sk = 0.0;
        let mut sum = self.cos[0] * theta;
        for k in 1..self.cos.len() {
            let c_next = ck * c1 - sk * s1;
            let s_next = sk * c1 + ck * s1;
            ck = c_next;
            sk = s_next;
            let kf = k as f64;
            sum += (self.cos[k] * sk + self.sin[k] * (1.0 - ck)) / kf;
        }
        sum
    }

    /// L² norm over `[0, 2π]`: `√(2π c_0² + π Σ_{k≥1} (c_k² + d_k²))`.
    pub fn l2_norm(&self) -> f64 {
        math::sqrt(self.l2_norm_squared())
    }

    pub fn l2_norm_squared(&self) -> f64 {
        let mut sum = 2.0 * math::PI * self.cos[0] * self.cos[0];
        for k in 1..self.cos.len() {
            sum += math::PI * (self.cos[k] * self.cos[k] + self.sin[k] * self.sin[k]);
        }
        sum
    }

    /// Power per harmonic, `c_k² + d_k²` for `k = 0..=degree`.
    ///
    /// By the correlation theorem this is the Fourier transform of the
    /// (non-normalized) autocorrelation `R_μ(θ) = ∫ μ(u) μ(u+θ) du`, up to the
    /// `π²` factor carried by the direct double integral.
    pub fn power_spectrum(&self) -> Vec<f64> {
        (0..self.cos.len())
            .map(|k| self.cos[k] * self.cos[k] + self.sin[k] * self.sin[k])
            .collect()
    }

    /// Sum of `c_k² + d_k²` for `k ≥ from`.
    pub fn power_from(&self, from: usize) -> f64 {
        (from..self.cos.len())
            .map(|k| self.cos[k] * self.cos[k] + self.sin[k] * self.sin[k])
            .sum()
    }

    pub fn scale(&self, factor: f64) -> FourierSeries {
        FourierSeries {
            cos: self.cos.iter().map(|c| c * factor).collect(),
            sin: self.sin.iter().map(|d| d * factor).collect(),
        }
    }

    pub fn add(&self, other: &FourierSeries) -> FourierSeries {
        let degree = self.degree().max(other.degree());
        let mut out = FourierSeries::zero(degree);
        for k in 0..=degree {
            out.cos[k] = self.cos_coeff(k) + other.cos_coeff(k);
            out.sin[k] = self.sin_coeff(k) + other.sin_coeff(k);
        }
        out
    }

    /// Shift the constant term.
    pub fn add_constant(&self, c: f64) -> FourierSeries {
        let mut out = self.clone();
        out.cos[0] += c;
        out
    }

    /// Pointwise product, exact via complex-coefficient convolution.
    pub fn product(&self, other: &FourierSeries) -> FourierSeries {
        let (ka, kb) = (self.degree() as isize, other.degree() as isize);
        let degree = (ka + kb) as usize;
        // complex coefficients e_m for m = -K..K, e_m = (c_|m| ∓ i d_|m|)/2
        let to_complex = |s: &FourierSeries, m: isize| -> (f64, f64) {
            let k = m.unsigned_abs();
            if k > s.degree() {
                return (0.0, 0.0);
            }
            if m == 0 {
                (s.cos[0], 0.0)
            } else if m > 0 {
                (0.5 * s.cos[k], -0.5 * s.sin[k])
            } else {
                (0.5 * s.cos[k], 0.5 * s.sin[k])
            }
        };
        let mut out = FourierSeries::zero(degree);
        for m in 0..=(degree as isize) {
            let (mut re, mut im) = (0.0, 0.0);
            for j in -ka..=ka {
                let l = m - j;
                if l < -kb || l > kb {
                    continue;
                }
                let (ar, ai) = to_complex(self, j);
                let (br, bi) = to_complex(other, l);
                re += ar * br - ai * bi;
                im += ar * bi + ai * br;
            }
            if m == 0 {
                out.cos[0] = re;
            } else {
                out.cos[m as usize] = 2.0 * re;
                out.sin[m as usize] = -2.0 * im;
            }
        }
        out
    }

    /// Drop trailing harmonics whose coefficients are below `tol` in
    /// magnitude. Keeps at least the constant term.
    pub fn truncated(&self, tol: f64) -> FourierSeries {
        let mut degree = self.degree();
        while degree > 0
            && math::abs(self.cos[degree]) < tol
            && math::abs(self.sin[degree]) < tol
        {
            degree -= 1;
        }
        FourierSeries {
            cos: self.cos[..=degree].to_vec(),
            sin: self.sin[..=degree].to_vec(),
        }
    }

    /// Least-degree trigonometric interpolation of equispaced samples
    /// `g(2πj/N)`, truncated at harmonic `k_max`.
    ///
    /// Requires `N ≥ 4·k_max` samples (comfortably above Nyquist). Returns the
    /// series and the L² norm of the residual `g - reconstruction` on the grid.
    pub fn decompose(samples: &[f64], k_max: usize) -> Result<(FourierSeries, f64)> {
        let n = samples.len();
        if n == 0 || (k_max > 0 && n < 4 * k_max) {
            return Err(Error::InvalidArgument(
                "need at least 4·k_max equispaced samples".into(),
            ));
        }
        if samples.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("samples must be finite".into()));
        }
        let mut series = FourierSeries::zero(k_max);
        let nf = n as f64;
        for k in 0..=k_max {
            let mut c = 0.0;
            let mut s = 0.0;
            for (j, &g) in samples.iter().enumerate() {
                let (sv, cv) = math::sincos(k as f64 * math::TAU * j as f64 / nf);
                c += g * cv;
                s += g * sv;
            }
            if k == 0 {
                series.cos[0] = c / nf;
            } else {
                series.cos[k] = 2.0 * c / nf;
                series.sin[k] = 2.0 * s / nf;
            }
        }
        let mut resid_sq = 0.0;
        for (j, &g) in samples.iter().enumerate() {
            let r = g - series.eval(math::TAU * j as f64 / nf);
            resid_sq += r * r;
        }
        let residual = math::sqrt(resid_sq * math::TAU / nf);
        Ok((series, residual))
    }
}
