//! Legendre functions P_ν(x), Q_ν(x) of complex degree on the cut (−1, 1).
//!
//! Both functions are summed as hypergeometric-type series about the nearer
//! endpoint, so the expansion variable never exceeds 1/2:
//!
//! * x ≥ 0, ξ = (1−x)/2:
//!   P_ν(x) = Σ (−ν)_n (1+ν)_n/(n!)² ξⁿ,
//!   Q_ν(x) = −½ Σ (1+ν)_n/(n!)² ξⁿ [π_n(ψ(1+ν) + ψ(n+1+ν) − 2ψ(n+1) + ln ξ) + T_n],
//!   where π_n = (−ν)_n and T_n = −d(−ν)_n/dν (T_{n+1} = (n−ν)T_n + π_n).
//! * x < 0, η = (1+x)/2: the logarithmic expansion about x = −1,
//!   P_ν(x) = Σ (1+ν)_n/(n!)² ηⁿ {π_n cos νπ
//!            + (sin νπ/π)[π_n(ψ(1+ν) + ψ(n+1+ν) − 2ψ(n+1) + ln η) + T_n]},
//!   written so that integer degrees need no limiting process, and the
//!   reflection Q_ν(x) = −cos(νπ)Q_ν(−x) − (π/2)sin(νπ)P_ν(−x).
//!
//! P_ν = P_{−ν−1} is used to move Re ν ≥ −1/2 before summing P.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::digamma;
use super::EULER_GAMMA;
use crate::error::{Error, Result};

const MAX_TERMS: usize = 2000;

/// Σ (1+ν)_n/(n!)² tⁿ [π_n(ψ(1+ν) + ψ(n+1+ν) − 2ψ(n+1) + ln t) + T_n]
/// together with Σ (−ν)_n (1+ν)_n/(n!)² tⁿ.
fn log_series(nu: Complex64, t: f64) -> Result<(Complex64, Complex64)> {
    let psi1 = digamma(nu + 1.0)?;
    let lt = t.ln();
    let mut w = Complex64::new(1.0, 0.0); // (1+ν)_n tⁿ/(n!)²
    let mut pi_n = Complex64::new(1.0, 0.0);
    let mut t_n = Complex64::new(0.0, 0.0);
    let mut psi_nu = psi1; // ψ(n+1+ν)
    let mut psi_int = -EULER_GAMMA; // ψ(n+1)
    let mut log_sum = Complex64::new(0.0, 0.0);
    let mut reg_sum = Complex64::new(0.0, 0.0);
    let mut small = 0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let bracket = pi_n * (psi1 + psi_nu - 2.0 * psi_int + lt) + t_n;
        let lt_term = w * bracket;
        let reg_term = w * pi_n;
        log_sum += lt_term;
        reg_sum += reg_term;
        let mag = lt_term.norm() + reg_term.norm();
        if mag <= 1e-17 * (log_sum.norm() + reg_sum.norm()).max(1e-300) {
            small += 1;
            if small > 3 && nf > nu.norm() {
                return Ok((log_sum, reg_sum));
            }
        } else {
            small = 0;
        }
        // advance n → n+1
        let t_next = t_n * (nf - nu) + pi_n;
        pi_n *= nf - nu;
        t_n = t_next;
        w = w * (nu + 1.0 + nf) * t / ((nf + 1.0) * (nf + 1.0));
        psi_nu += 1.0 / (nu + 1.0 + nf);
        psi_int += 1.0 / (nf + 1.0);
    }
    Err(Error::UnsupportedRange(format!("Legendre series for degree {nu} did not converge")))
}

/// Plain hypergeometric series F(−ν, ν+1; 1; t).
fn hyp_series(nu: Complex64, t: f64) -> Result<Complex64> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut small = 0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term = term * (nf - nu) * (nf + 1.0 + nu) * t / ((nf + 1.0) * (nf + 1.0));
        sum += term;
        if term.norm() <= 1e-17 * sum.norm().max(1e-300) {
            small += 1;
            if small > 3 && nf > nu.norm() {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::UnsupportedRange(format!("Legendre series for degree {nu} did not converge")))
}

fn check_x(x: f64) -> Result<()> {
    if !x.is_finite() || x <= -1.0 || x >= 1.0 {
        if x == 1.0 || x == -1.0 {
            return Err(Error::EndpointEvaluation);
        }
        return Err(Error::UnsupportedRange(format!("x = {x} outside (−1, 1)")));
    }
    Ok(())
}

/// P_ν(x) for −1 < x < 1.
pub fn legendre_p(nu: Complex64, x: f64) -> Result<Complex64> {
    check_x(x)?;
    let nu = if nu.re < -0.5 { -nu - 1.0 } else { nu };
    if x >= 0.0 {
        hyp_series(nu, (1.0 - x) / 2.0)
    } else {
        let (log_sum, reg_sum) = log_series(nu, (1.0 + x) / 2.0)?;
        let (s, c) = ((nu * PI).sin(), (nu * PI).cos());
        Ok(reg_sum * c + log_sum * s / PI)
    }
}

/// Q_ν(x) for −1 < x < 1 (Ferrers function of the second kind);
/// ν must not be a negative integer.
pub fn legendre_q(nu: Complex64, x: f64) -> Result<Complex64> {
    check_x(x)?;
    if nu.im == 0.0 && nu.re < 0.0 && nu.re == nu.re.round() {
        return Err(Error::PoleAtNonpositiveInteger(nu.re + 1.0));
    }
    if x >= 0.0 {
        let (log_sum, _) = log_series(nu, (1.0 - x) / 2.0)?;
        Ok(-0.5 * log_sum)
    } else {
        let q = legendre_q(nu, -x)?;
        let p = legendre_p(nu, -x)?;
        Ok(-(nu * PI).cos() * q - (PI / 2.0) * (nu * PI).sin() * p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn trivial_values() {
        assert!((legendre_p(c(0.0, 0.0), 0.3).unwrap() - 1.0).norm() < 1e-14);
        assert!(legendre_q(c(0.0, 0.0), 0.0).unwrap().norm() < 1e-14);
        assert!((legendre_p(c(2.0, 0.0), 0.5).unwrap() + 0.125).norm() < 1e-14);
        assert!((legendre_p(c(2.0, 0.0), -0.5).unwrap() + 0.125).norm() < 1e-13);
        // Q_0(x) = ½ ln((1+x)/(1−x)), Q_1(x) = x Q_0(x) − 1
        for &x in &[-0.9f64, -0.4, 0.2, 0.7] {
            let q0 = 0.5 * ((1.0 + x) / (1.0 - x)).ln();
            assert!((legendre_q(c(0.0, 0.0), x).unwrap() - q0).norm() < 1e-13, "x={x}");
            assert!((legendre_q(c(1.0, 0.0), x).unwrap() - (x * q0 - 1.0)).norm() < 1e-13, "x={x}");
        }
        assert!(matches!(legendre_p(c(1.0, 0.0), 1.0), Err(Error::EndpointEvaluation)));
    }

    #[test]
    fn reference_values_complex_degree() {
        // Independent arbitrary-precision evaluation of the Ferrers functions.
        let cases = [
            (c(0.3, 0.7), 0.4, c(0.997_261_323_887_987_7, -0.404_726_249_290_051_9), c(-0.523_135_673_730_034_2, -1.036_953_094_062_104_7)),
            (c(-1.7, 2.1), -0.6, c(-21.659_112_705_340_311, 19.614_009_972_757_611), c(30.800_523_536_533_025, 34.020_549_928_843_068)),
        ];
        for (nu, x, p, q) in cases {
            let pv = legendre_p(nu, x).unwrap();
            let qv = legendre_q(nu, x).unwrap();
            assert!((pv - p).norm() < 1e-12 * p.norm(), "P = {pv}");
            assert!((qv - q).norm() < 1e-12 * q.norm(), "Q = {qv}");
        }
    }

    #[test]
    fn ode_residual() {
        for &nu in &[c(0.5, 0.0), c(1.3, 0.8), c(-0.2, 2.0), c(3.5, -1.0)] {
            for i in -8..=8 {
                let x = i as f64 * 0.1;
                let h = 1e-3;
                let f = |y: f64| legendre_p(nu, y).unwrap();
                let (f0, fp1, fm1, fp2, fm2) = (f(x), f(x + h), f(x - h), f(x + 2.0 * h), f(x - 2.0 * h));
                let d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
                let d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
                let res = (1.0 - x * x) * d2 - 2.0 * x * d1 + nu * (nu + 1.0) * f0;
                assert!(res.norm() < 1e-7 * (1.0 + nu.norm_sqr()) * f0.norm().max(1.0), "nu={nu} x={x} res={res}");
            }
        }
    }

    #[test]
    fn midpoint_agreement() {
        // The two endpoint expansions must agree at x = 0.
        for &nu in &[c(0.5, 0.0), c(1.3, 0.8), c(2.2, -1.5)] {
            let from_right = hyp_series(nu, 0.5).unwrap();
            let (l, r) = log_series(nu, 0.5).unwrap();
            let from_left = r * (nu * PI).cos() + l * (nu * PI).sin() / PI;
            assert!((from_right - from_left).norm() < 1e-12, "nu={nu}");
        }
    }
}
