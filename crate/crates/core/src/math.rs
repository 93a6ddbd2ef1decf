//! Thin wrappers over `libm` so the rest of the crate works without `std`,
//! plus a few shared numeric helpers.

pub use core::f64::consts::PI;

pub const TAU: f64 = 2.0 * PI;

#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}
#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}
#[inline]
pub fn sincos(x: f64) -> (f64, f64) {
    libm::sincos(x)
}
#[inline]
pub fn tan(x: f64) -> f64 {
    libm::tan(x)
}
#[inline]
pub fn asin(x: f64) -> f64 {
    libm::asin(x)
}
#[inline]
pub fn acos(x: f64) -> f64 {
    libm::acos(x)
}
#[inline]
pub fn atan2(y: f64, x: f64) -> f64 {
    libm::atan2(y, x)
}
#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}
#[inline]
pub fn hypot(x: f64, y: f64) -> f64 {
    libm::hypot(x, y)
}
#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}
#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}
#[inline]
pub fn powi(x: f64, n: i32) -> f64 {
    libm::pow(x, n as f64)
}
#[inline]
pub fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}
#[inline]
pub fn abs(x: f64) -> f64 {
    libm::fabs(x)
}
#[inline]
pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}

/// `acos` with the argument clamped to `[-1, 1]`.
///
/// The circle/line case analysis produces arguments that drift a few ulp
/// outside the domain near tangency; clamping is the intended resolution.
#[inline]
pub fn acos_clamped(x: f64) -> f64 {
    libm::acos(x.clamp(-1.0, 1.0))
}

/// Reduce an angle to `[0, 2π)`.
#[inline]
pub fn wrap_angle(theta: f64) -> f64 {
    let mut t = theta % TAU;
    if t < 0.0 {
        t += TAU;
    }
    t
}

/// Γ(n/2) for positive half-integer arguments, by exact recurrence from
/// Γ(1/2) = √π and Γ(1) = 1.
pub fn gamma_half(twice_arg: u32) -> f64 {
    assert!(twice_arg >= 1, "gamma_half requires a positive argument");
    let sqrt_pi = sqrt(PI);
    let mut value = if twice_arg % 2 == 0 { 1.0 } else { sqrt_pi };
    let mut k = if twice_arg % 2 == 0 { 2 } else { 1 };
    while k + 2 <= twice_arg {
        value *= k as f64 / 2.0;
        k += 2;
    }
    value
}

/// Legendre polynomials `P_0(x), ..., P_n(x)` by the stable three-term
/// recurrence `(k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}`.
pub fn legendre_all(n: usize, x: f64) -> alloc::vec::Vec<f64> {
    let mut p = alloc::vec![0.0; n + 1];
    p[0] = 1.0;
    if n >= 1 {
        p[1] = x;
    }
    for k in 2..=n {
        let kf = k as f64;
        p[k] = ((2.0 * kf - 1.0) * x * p[k - 1] - (kf - 1.0) * p[k - 2]) / kf;
    }
    p
}

/// `P_n(x)` alone.
pub fn legendre_p(n: usize, x: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => x,
        _ => {
            let (mut pm1, mut p) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * pm1) / kf;
                pm1 = p;
                p = next;
            }
            p
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_half_matches_known_values() {
        assert!((gamma_half(2) - 1.0).abs() < 1e-15); // Γ(1)
        assert!((gamma_half(1) - sqrt(PI)).abs() < 1e-15); // Γ(1/2)
        assert!((gamma_half(4) - 1.0).abs() < 1e-15); // Γ(2)
        assert!((gamma_half(3) - sqrt(PI) / 2.0).abs() < 1e-15); // Γ(3/2)
        assert!((gamma_half(5) - 0.75 * sqrt(PI)).abs() < 1e-14); // Γ(5/2)
        assert!((gamma_half(8) - 6.0).abs() < 1e-13); // Γ(4) = 3!
        assert!((gamma_half(7) - 15.0 / 8.0 * sqrt(PI)).abs() < 1e-13); // Γ(7/2)
    }

    #[test]
    fn legendre_recurrence_matches_binomial_expansion() {
        // P_n(cos θ) = Σ_k C(n,k) C(n+k,k) (-1)^k sin^{2k}(θ/2), cross-check for n ≤ 8.
        fn binom(n: u64, k: u64) -> f64 {
            let mut v = 1.0;
            for i in 0..k {
                v *= (n - i) as f64 / (i + 1) as f64;
            }
            v
        }
        for n in 0..=8usize {
            for i in 0..32 {
                let theta = PI * (i as f64 + 0.5) / 32.0;
                let x = cos(theta);
                let s2 = sin(theta / 2.0) * sin(theta / 2.0);
                let mut sum = 0.0;
                let mut sign = 1.0;
                let mut s2k = 1.0;
                for k in 0..=n as u64 {
                    sum += sign * binom(n as u64, k) * binom(n as u64 + k, k) * s2k;
                    sign = -sign;
                    s2k *= s2;
                }
                assert!(
                    (legendre_p(n, x) - sum).abs() < 1e-10,
                    "n={n} theta={theta}"
                );
            }
        }
    }

    #[test]
    fn wrap_angle_stays_in_range() {
        for &t in &[-7.0, -1.0, 0.0, 1.0, 6.4, 13.0] {
            let w = wrap_angle(t);
            assert!((0.0..TAU).contains(&w));
            assert!((sin(w) - sin(t)).abs() < 1e-12);
        }
    }
}
