//! Gamma and digamma functions of a complex argument.
//!
//! Γ uses the Lanczos approximation (g = 7, nine coefficients) evaluated in
//! logarithmic form, with the reflection formula for Re z < 1/2.  ψ shifts the
//! argument upward with ψ(z) = ψ(z+1) − 1/z until Re z ≥ 10 and then applies
//! the Stirling-type expansion with Bernoulli numbers B_{2k}.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln √(2π)
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// B_{2k}/(2k) for k = 1..10, used by the digamma asymptotic series.
const BERNOULLI_OVER_2K: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
    43867.0 / 14364.0,
    -174611.0 / 6600.0,
];

/// Returns `Some(n)` when `z` is exactly the nonpositive integer `n`.
fn nonpositive_integer(z: Complex64) -> Option<f64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        Some(z.re)
    } else {
        None
    }
}

/// ln Γ(z) for Re z ≥ 1/2 (principal-type branch of the Lanczos form).
fn ln_gamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + x.ln()
}

/// sin(πz) evaluated without loss for large |Im z| is not needed here; the
/// reflection formula is only used for moderate |z|.
fn sin_pi(z: Complex64) -> Complex64 {
    // Reduce the real part modulo 2 to keep the argument small.
    let r = z.re - 2.0 * (z.re / 2.0).round();
    (Complex64::new(r, z.im) * PI).sin()
}

/// π·cot(πz), evaluated stably for large |Im z|.
pub(crate) fn pi_cot_pi(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    if z.im >= 0.0 {
        let w = (2.0 * PI * i * z).exp();
        PI * i * (w + 1.0) / (w - 1.0)
    } else {
        let w = (-2.0 * PI * i * z).exp();
        PI * i * (1.0 + w) / (1.0 - w)
    }
}

/// Γ(z) for complex z.
///
/// Relative accuracy is about 1e−14 for |z| ≤ 50.  Nonpositive integers are
/// rejected with [`Error::PoleAtNonpositiveInteger`].
pub fn gamma(z: Complex64) -> Result<Complex64> {
    if let Some(n) = nonpositive_integer(z) {
        return Err(Error::PoleAtNonpositiveInteger(n));
    }
    if z.re < 0.5 {
        // Γ(z)Γ(1−z) = π / sin(πz)
        let g = ln_gamma_right(1.0 - z).exp();
        Ok(PI / (sin_pi(z) * g))
    } else {
        Ok(ln_gamma_right(z).exp())
    }
}

/// Γ(x) for real x (thin wrapper over [`gamma`]).
pub fn gamma_real(x: f64) -> Result<f64> {
    Ok(gamma(Complex64::new(x, 0.0))?.re)
}

/// 1/Γ(x) for real x, returning 0 at the poles instead of failing.
pub fn rgamma_real(x: f64) -> f64 {
    match gamma_real(x) {
        Ok(g) => 1.0 / g,
        Err(_) => 0.0,
    }
}

/// Digamma ψ(z) = Γ′(z)/Γ(z) for complex z, accurate to about 1e−15.
pub fn digamma(z: Complex64) -> Result<Complex64> {
    if let Some(n) = nonpositive_integer(z) {
        return Err(Error::PoleAtNonpositiveInteger(n));
    }
    if z.re < 0.5 {
        // ψ(1−z) − ψ(z) = π cot(πz)
        return Ok(digamma(1.0 - z)? - pi_cot_pi(z));
    }
    let mut w = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while w.re < 10.0 {
        acc -= 1.0 / w;
        w += 1.0;
    }
    let inv2 = 1.0 / (w * w);
    let mut pow = inv2;
    let mut series = Complex64::new(0.0, 0.0);
    for &c in BERNOULLI_OVER_2K.iter() {
        series += c * pow;
        pow *= inv2;
    }
    Ok(acc + w.ln() - 0.5 / w - series)
}

/// ψ(x) for real x.
pub fn digamma_real(x: f64) -> Result<f64> {
    Ok(digamma(Complex64::new(x, 0.0))?.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::EULER_GAMMA;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn gamma_trivial_values() {
        assert!((gamma(c(1.0)).unwrap().re - 1.0).abs() < 1e-14);
        assert!((gamma(c(0.5)).unwrap().re - PI.sqrt()).abs() < 1e-14);
        assert!((gamma(c(1.5)).unwrap().re - PI.sqrt() / 2.0).abs() < 1e-14);
    }

    #[test]
    fn gamma_factorials_and_poles() {
        let mut f = 1.0f64;
        for n in 1..30 {
            let g = gamma(c(n as f64 + 1.0)).unwrap().re;
            f *= n as f64;
            assert!(((g - f) / f).abs() < 1e-13, "n={n}");
        }
        assert!(matches!(gamma(c(-3.0)), Err(Error::PoleAtNonpositiveInteger(_))));
        assert!(matches!(gamma(c(0.0)), Err(Error::PoleAtNonpositiveInteger(_))));
    }

    #[test]
    fn gamma_recurrence_complex() {
        for &(x, y) in &[(0.3, 1.7), (-2.4, 0.6), (7.5, -3.0), (20.0, 15.0), (-0.5, -0.5)] {
            let z = Complex64::new(x, y);
            let lhs = gamma(z + 1.0).unwrap();
            let rhs = z * gamma(z).unwrap();
            assert!((lhs - rhs).norm() / rhs.norm() < 1e-13, "z={z}");
        }
    }

    #[test]
    fn digamma_values() {
        assert!((digamma(c(1.0)).unwrap().re + EULER_GAMMA).abs() < 1e-15);
        assert!((digamma(c(2.0)).unwrap().re - (1.0 - EULER_GAMMA)).abs() < 1e-15);
        // Independent oracle: ψ(101) = ψ(1) + H_100 with H_100 summed exactly.
        let h100 = crate::specfun::harmonic(100);
        let h = crate::specfun::rational_to_f64(&h100);
        assert!((digamma(c(101.0)).unwrap().re - (h - EULER_GAMMA)).abs() < 1e-13);
    }

    #[test]
    fn digamma_recurrence_grid() {
        for i in -6..8 {
            for j in -3..4 {
                let z = Complex64::new(0.37 + i as f64 * 1.3, j as f64 * 2.1);
                let d = digamma(z + 1.0).unwrap() - digamma(z).unwrap() - 1.0 / z;
                assert!(d.norm() < 1e-12, "z={z} d={d}");
            }
        }
    }
}
