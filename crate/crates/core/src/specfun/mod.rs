//! Special-function kernel over complex arguments: Γ, ψ, Bessel/Hankel
//! functions of real order, Legendre functions of complex degree, generalized
//! exponential integrals and exact rational constants.
//!
//! Every routine is a pure function; failures are reported through
//! [`Error`](crate::Error) and NaN is never returned silently.

mod constants;
mod cylinder;
pub(crate) mod dd;
mod expint;
mod gamma;
mod legendre_fn;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use constants::{
    bernoulli, bernoulli_table, harmonic, pochhammer, pochhammer_rational, rational_to_f64, zeta_int, EULER_GAMMA,
};
pub use expint::{expint_e, expint_e_scaled};
pub use gamma::{digamma, digamma_real, gamma, gamma_real, rgamma_real};
pub use legendre_fn::{legendre_p, legendre_q};

#[allow(unused_imports)]
pub(crate) use gamma::pi_cot_pi;

/// Which cylinder function to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselKind {
    /// Bessel function of the first kind J_ν.
    J,
    /// Bessel function of the second kind Y_ν.
    Y,
    /// Hankel function H⁽¹⁾_ν = J_ν + iY_ν.
    H1,
    /// Hankel function H⁽²⁾_ν = J_ν − iY_ν.
    H2,
}

/// Which Legendre function to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LegendreKind {
    /// Ferrers function of the first kind P_ν.
    P,
    /// Ferrers function of the second kind Q_ν.
    Q,
}

/// Cylinder function scaled by e^{−|Im z|}: returns C_ν(z)·e^{−|Im z|}.
///
/// The scaled form never overflows and is what the model evaluators use
/// for arguments with large imaginary part.
pub fn bessel_scaled(kind: BesselKind, order: f64, z: Complex64) -> Result<Complex64> {
    let want_y = kind != BesselKind::J;
    let (j, y) = cylinder::jy_scaled(order, z, want_y)?;
    let i = Complex64::i();
    Ok(match kind {
        BesselKind::J => j,
        BesselKind::Y => y.unwrap_or_default(),
        BesselKind::H1 => j + i * y.unwrap_or_default(),
        BesselKind::H2 => j - i * y.unwrap_or_default(),
    })
}

/// Cylinder function C_ν(z) for real order ν and complex z.
///
/// Relative accuracy is about 1e−13 for 0 < |z| ≤ 200.  Fails with
/// [`Error::UnsupportedRange`] when the unscaled value would overflow.
pub fn bessel(kind: BesselKind, order: f64, z: Complex64) -> Result<Complex64> {
    let scale = z.im.abs();
    if scale > 700.0 {
        return Err(Error::UnsupportedRange(format!(
            "|Im z| = {scale} overflows; use bessel_scaled"
        )));
    }
    Ok(bessel_scaled(kind, order, z)? * scale.exp())
}

/// Derivative d/dz C_ν(z) = (C_{ν−1}(z) − C_{ν+1}(z))/2, scaled by e^{−|Im z|}.
pub fn bessel_derivative_scaled(kind: BesselKind, order: f64, z: Complex64) -> Result<Complex64> {
    Ok((bessel_scaled(kind, order - 1.0, z)? - bessel_scaled(kind, order + 1.0, z)?) / 2.0)
}

/// Derivative d/dz C_ν(z).
pub fn bessel_derivative(kind: BesselKind, order: f64, z: Complex64) -> Result<Complex64> {
    Ok((bessel(kind, order - 1.0, z)? - bessel(kind, order + 1.0, z)?) / 2.0)
}

/// Legendre function P_ν(x) or Q_ν(x) of complex degree ν for −1 < x < 1.
pub fn legendre(kind: LegendreKind, degree: Complex64, x: f64) -> Result<Complex64> {
    match kind {
        LegendreKind::P => legendre_p(degree, x),
        LegendreKind::Q => legendre_q(degree, x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn bessel_trivial_and_errors() {
        assert_eq!(bessel(BesselKind::J, 0.0, c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        assert!(matches!(bessel(BesselKind::Y, 0.0, c(0.0, 0.0)), Err(Error::OriginSingularity)));
        assert!(matches!(bessel(BesselKind::H2, 1.0, c(0.0, 0.0)), Err(Error::OriginSingularity)));
    }

    /// First zero of J_0 located by bisection on the ascending power series
    /// (summed independently here in binary64, adequate for |z| < 3).
    #[test]
    fn first_zero_of_j0() {
        let j0 = |x: f64| {
            let mut t = 1.0;
            let mut s = 1.0;
            for k in 1..60 {
                t *= -x * x / 4.0 / (k as f64 * k as f64);
                s += t;
            }
            s
        };
        let (mut a, mut b) = (2.0, 3.0);
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if j0(a) * j0(m) <= 0.0 {
                b = m;
            } else {
                a = m;
            }
        }
        let root = 0.5 * (a + b);
        assert!((root - 2.404_825_557_695_773).abs() < 1e-14);
        assert!(bessel(BesselKind::J, 0.0, c(root, 0.0)).unwrap().norm() <= 1e-9);
    }

    #[test]
    fn hankel_identities() {
        for &(nu, z) in &[(0.0, c(3.0, 1.0)), (0.5, c(25.0, -3.0)), (1.0, c(-4.0, 2.0))] {
            let j = bessel(BesselKind::J, nu, z).unwrap();
            let h1 = bessel(BesselKind::H1, nu, z).unwrap();
            let h2 = bessel(BesselKind::H2, nu, z).unwrap();
            assert!((h1 + h2 - 2.0 * j).norm() <= 1e-15 * j.norm().max(1.0));
        }
    }

    /// H⁽²⁾_0 near z = 10i compared with the partial sum of its asymptotic
    /// expansion using a_k = Γ(½+k)²/((−2)^k π k!), written independently.
    #[test]
    fn hankel_h2_against_partial_sum() {
        for &z in &[c(0.0, 10.0), c(5.0, 10.0), c(10.0, 0.5)] {
            let h2 = bessel(BesselKind::H2, 0.0, z).unwrap();
            let mut sum = c(0.0, 0.0);
            for k in 0..12 {
                let g = gamma_real(0.5 + k as f64).unwrap();
                let fact = gamma_real(k as f64 + 1.0).unwrap();
                let ak = g * g / ((-2.0f64).powi(k) * std::f64::consts::PI * fact);
                // H2 ~ √(2/(πz)) e^{−i(z−π/4)} Σ (−i)^k a_k z^{−k}
                sum += c(0.0, -1.0).powi(k) * ak * z.powi(-k);
            }
            let lead = (2.0 / (std::f64::consts::PI * z)).sqrt()
                * (-c(0.0, 1.0) * (z - std::f64::consts::FRAC_PI_4)).exp();
            let approx = lead * sum;
            assert!((h2 - approx).norm() < 1e-6 * h2.norm(), "z={z}: {h2} vs {approx}");
        }
    }

    #[test]
    fn legendre_dispatch() {
        assert!((legendre(LegendreKind::P, c(2.0, 0.0), 0.5).unwrap() + 0.125).norm() < 1e-14);
    }
}
