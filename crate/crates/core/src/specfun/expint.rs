//! Generalized exponential integrals E_k(z) = ∫_1^∞ e^{−zt} t^{−k} dt, k ≥ 1,
//! on the principal branch (cut along the negative real axis).
//!
//! * |z| < 2, or Re z < 0 with |z| < 20: the convergent expansion
//!   E_k(z) = (−z)^{k−1}/(k−1)! (ψ(k) − ln z) − Σ_{j≥0, j≠k−1} (−z)^j/(j!(1−k+j)),
//!   summed in double-double arithmetic.
//! * otherwise: the continued fraction
//!   e^{z}E_k(z) = 1/(z+k − 1·k/(z+k+2 − 2(k+1)/(z+k+4 − …))),
//!   evaluated with the modified Lentz algorithm.
//!
//! [`expint_e_scaled`] returns e^{z}E_k(z), which stays bounded where E_k
//! itself under- or overflows.

use num_complex::Complex64;

use super::dd::{CDd, Dd};
use super::EULER_GAMMA;
use crate::error::{Error, Result};

fn series_region(z: Complex64) -> bool {
    let r = z.norm();
    r < 2.0 || (z.re < 0.0 && r < 20.0)
}

/// E_k(z) by the ascending series (unscaled).
fn series(k: u32, z: Complex64) -> Complex64 {
    let m = (k - 1) as i64; // index of the logarithmic term
    let mz = CDd::from_c(-z);
    let mut pw = CDd::from_dd(Dd::new(1.0)); // (−z)^j / j!
    let mut sum = CDd::ZERO;
    let mut log_coeff = Complex64::new(0.0, 0.0);
    let mut j: i64 = 0;
    loop {
        if j == m {
            log_coeff = pw.to_c();
        } else {
            let term = pw.div_dd(Dd::new((1 - k as i64 + j) as f64));
            sum = sum.add(term);
            if j > m && j as f64 > z.norm() && term.norm_f64() <= 1e-34 * sum.norm_f64().max(1e-300) {
                break;
            }
        }
        j += 1;
        pw = pw.mul(mz).div_dd(Dd::new(j as f64));
        if j > 500 {
            break;
        }
    }
    // ψ(k) = −γ + H_{k−1}
    let mut psi = -EULER_GAMMA;
    for i in 1..k {
        psi += 1.0 / i as f64;
    }
    log_coeff * (psi - z.ln()) - sum.to_c()
}

/// e^{z}E_k(z) by the continued fraction (modified Lentz).
fn continued_fraction(k: u32, z: Complex64) -> Result<Complex64> {
    let n = k as f64;
    let tiny = 1e-300;
    let mut b = z + n;
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..20_000 {
        let fi = i as f64;
        let a = -fi * (n - 1.0 + fi);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        if c.norm() < tiny {
            c = Complex64::new(tiny, 0.0);
        }
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            return Ok(h);
        }
    }
    Err(Error::UnsupportedRange(format!("E_{k} continued fraction did not converge at z = {z}")))
}

fn check(k: u32, z: Complex64) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidInput("E_k requires k ≥ 1".into()));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::UnsupportedRange(format!("non-finite argument {z}")));
    }
    if z.im == 0.0 && z.re < 0.0 {
        return Err(Error::BranchCutArgument(format!("{z}")));
    }
    if z.re == 0.0 && z.im == 0.0 && k == 1 {
        return Err(Error::BranchCutArgument("0 (logarithmic singularity of E_1)".into()));
    }
    Ok(())
}

/// E_k(z) for integer k ≥ 1.
pub fn expint_e(k: u32, z: Complex64) -> Result<Complex64> {
    check(k, z)?;
    if z.norm() == 0.0 {
        return Ok(Complex64::new(1.0 / (k as f64 - 1.0), 0.0));
    }
    if series_region(z) {
        Ok(series(k, z))
    } else {
        Ok(continued_fraction(k, z)? * (-z).exp())
    }
}

/// e^{z}E_k(z) for integer k ≥ 1.
pub fn expint_e_scaled(k: u32, z: Complex64) -> Result<Complex64> {
    check(k, z)?;
    if z.norm() == 0.0 {
        return Ok(Complex64::new(1.0 / (k as f64 - 1.0), 0.0));
    }
    if series_region(z) {
        Ok(series(k, z) * z.exp())
    } else {
        continued_fraction(k, z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Composite Gauss–Legendre quadrature of ∫_1^∞ e^{−zt}t^{−k}dt after
    /// the substitution t = 1/u, u ∈ (0, 1] (independent oracle).
    fn quad_oracle(k: u32, z: Complex64) -> Complex64 {
        let nodes = [
            (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
            (-0.538_469_310_105_683, 0.478_628_670_499_366_5),
            (0.0, 0.568_888_888_888_888_9),
            (0.538_469_310_105_683, 0.478_628_670_499_366_5),
            (0.906_179_845_938_664, 0.236_926_885_056_189_1),
        ];
        let panels = 4000;
        let mut s = Complex64::new(0.0, 0.0);
        for p in 0..panels {
            let a = p as f64 / panels as f64;
            let b = (p + 1) as f64 / panels as f64;
            for &(x, w) in &nodes {
                let u: f64 = 0.5 * (a + b) + 0.5 * (b - a) * x;
                s += 0.5 * (b - a) * w * (-z / u).exp() * u.powi(k as i32 - 2);
            }
        }
        s
    }

    #[test]
    fn trivial_values() {
        assert_eq!(expint_e(2, c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        assert!(matches!(expint_e(1, c(0.0, 0.0)), Err(Error::BranchCutArgument(_))));
        assert!(matches!(expint_e(3, c(-1.0, 0.0)), Err(Error::BranchCutArgument(_))));
    }

    #[test]
    fn small_argument_logarithm() {
        for &z in &[1e-3, 1e-5] {
            let e1 = expint_e(1, c(z, 0.0)).unwrap().re;
            let approx = -z.ln() - EULER_GAMMA;
            assert!((e1 - approx).abs() < 2.0 * z, "z={z}");
        }
    }

    #[test]
    fn matches_quadrature() {
        for &(k, z) in &[(2, c(1.0, 0.0)), (1, c(0.5, 0.3)), (3, c(4.0, -2.0)), (1, c(25.0, 3.0))] {
            let v = expint_e(k, z).unwrap();
            let q = quad_oracle(k, z);
            assert!((v - q).norm() < 1e-10 * q.norm(), "k={k} z={z}: {v} vs {q}");
        }
    }

    #[test]
    fn recurrence_across_regions() {
        for &(x, y) in &[(0.3, 0.2), (1.5, -1.0), (3.0, 0.5), (-5.0, 3.0), (-15.0, 0.5), (30.0, 10.0), (-25.0, 2.0), (0.5, 40.0)] {
            let z = c(x, y);
            for k in 1..=6u32 {
                let ek = expint_e_scaled(k, z).unwrap();
                let ek1 = expint_e_scaled(k + 1, z).unwrap();
                // k E_{k+1} = e^{−z} − z E_k in scaled form
                let res = k as f64 * ek1 - (1.0 - z * ek);
                assert!(res.norm() < 1e-10 * (1.0 + (z * ek).norm()), "k={k} z={z} res={res}");
            }
        }
    }

    #[test]
    fn seam_continuity() {
        for &arg in &[0.0f64, 1.0, -2.0, 3.0] {
            let e = Complex64::from_polar(1.0, arg);
            for &r in &[2.0, 20.0] {
                let a = expint_e_scaled(2, e * (r - 1e-12)).unwrap();
                let b = expint_e_scaled(2, e * (r + 1e-12)).unwrap();
                assert!((a - b).norm() < 1e-9 * a.norm(), "arg={arg} r={r}");
            }
        }
    }
}
