//! Bessel functions J_ν, Y_ν (and through them H⁽¹⁾, H⁽²⁾) of real order and
//! complex argument.
//!
//! * |z| < 20: ascending power series summed in double-double arithmetic.
//!   Y_n for integer n uses the logarithmic series with harmonic numbers;
//!   non-integer Y_ν uses (J_ν cos νπ − J_{−ν})/sin νπ.
//! * |z| ≥ 20: Hankel asymptotic expansions with the coefficients
//!   a_k(ν) = a_{k−1}(ν)(4ν² − (2k−1)²)/(8k), optimally truncated, for
//!   Re z ≥ 0; the left half-plane is reached by analytic continuation
//!   J_ν(ze^{imπ}) = e^{imνπ}J_ν(z),
//!   Y_ν(ze^{imπ}) = e^{−imνπ}Y_ν(z) + 2im cos(νπ) J_ν(z),  m = ±1.
//!
//! All internal routines return values scaled by e^{−|Im z|} so that very
//! large imaginary parts do not overflow.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::dd::{CDd, Dd};
use super::gamma::rgamma_real;
use super::EULER_GAMMA;
use crate::error::{Error, Result};

/// Series / asymptotic switchover radius.
pub(crate) const SWITCH_RADIUS: f64 = 20.0;

/// Arguments beyond this modulus lose every digit of phase in binary64.
const MAX_MODULUS: f64 = 1e15;

fn is_integer(x: f64) -> bool {
    x == x.round()
}

/// Σ_k (−z²/4)^k / (k! (ν+1)_k), summed in double-double.
fn j_core_series(nu: f64, z: Complex64) -> Complex64 {
    let zz = CDd::from_c(z);
    let q = zz.mul(zz).mul_dd(Dd::new(-0.25));
    let mut t = CDd::from_dd(Dd::new(1.0));
    let mut sum = t;
    let mut k = 1.0f64;
    loop {
        let denom = Dd::new(k).mul(Dd::new(k).add(Dd::new(nu)));
        t = t.mul(q).div_dd(denom);
        sum = sum.add(t);
        if k > 8.0 && k * k > z.norm_sqr() && t.norm_f64() <= 1e-34 * sum.norm_f64() {
            break;
        }
        if k > 400.0 {
            break;
        }
        k += 1.0;
    }
    sum.to_c()
}

/// J_ν(z) by the ascending series; ν may be negative (non-integer or
/// integer, the latter via J_{−n} = (−1)^n J_n).
fn j_series(nu: f64, z: Complex64) -> Result<Complex64> {
    if nu < 0.0 && is_integer(nu) {
        let n = -nu;
        let v = j_series(n, z)?;
        return Ok(if (n as i64) % 2 == 0 { v } else { -v });
    }
    if z == Complex64::new(0.0, 0.0) {
        return if nu == 0.0 {
            Ok(Complex64::new(1.0, 0.0))
        } else if nu > 0.0 {
            Ok(Complex64::new(0.0, 0.0))
        } else {
            Err(Error::OriginSingularity)
        };
    }
    let pref = ((z / 2.0).ln() * nu).exp() * rgamma_real(nu + 1.0);
    Ok(pref * j_core_series(nu, z))
}

/// Y_n(z), integer n ≥ 0, by the logarithmic ascending series.
fn y_int_series(n: u32, z: Complex64, jn: Complex64) -> Complex64 {
    let half = z / 2.0;
    let q4 = half * half; // z²/4
    // Finite part: −(z/2)^{−n}/π Σ_{k<n} (n−k−1)!/k! (z²/4)^k
    let mut finite = Complex64::new(0.0, 0.0);
    if n > 0 {
        let mut pw = Complex64::new(1.0, 0.0);
        for k in 0..n {
            let num: f64 = (1..=(n - k - 1)).map(|x| x as f64).product();
            let den: f64 = (1..=k).map(|x| x as f64).product();
            finite += pw * (num / den);
            pw *= q4;
        }
        finite = -finite / (half.powi(n as i32) * PI);
    }
    // Harmonic part: Σ (H_k + H_{n+k}) (−z²/4)^k / (k!(n+k)!)
    let zz = CDd::from_c(z);
    let q = zz.mul(zz).mul_dd(Dd::new(-0.25));
    let nfact: f64 = (1..=n).map(|x| x as f64).product();
    let mut t = CDd::from_dd(Dd::new(1.0).div(Dd::new(nfact)));
    let mut hk = Dd::ZERO;
    let mut hnk = Dd::ZERO;
    for j in 1..=n {
        hnk = hnk.add(Dd::new(1.0).div(Dd::new(j as f64)));
    }
    let mut sum = t.mul_dd(hk.add(hnk));
    let mut k = 1u32;
    loop {
        let kf = k as f64;
        t = t.mul(q).div_dd(Dd::new(kf).mul(Dd::new(kf + n as f64)));
        hk = hk.add(Dd::new(1.0).div(Dd::new(kf)));
        hnk = hnk.add(Dd::new(1.0).div(Dd::new(kf + n as f64)));
        let term = t.mul_dd(hk.add(hnk));
        sum = sum.add(term);
        if k > 8 && kf * kf > z.norm_sqr() && term.norm_f64() <= 1e-34 * sum.norm_f64().max(1e-300) {
            break;
        }
        if k > 400 {
            break;
        }
        k += 1;
    }
    let harm = sum.to_c() * half.powi(n as i32) / PI;
    finite + (2.0 / PI) * ((half).ln() + EULER_GAMMA) * jn - harm
}

/// Hankel asymptotic sums P± = Σ_k (±i)^k a_k(ν)/z^k, optimally truncated.
fn hankel_sums(nu: f64, z: Complex64) -> (Complex64, Complex64) {
    let mu = 4.0 * nu * nu;
    let inv = 1.0 / z;
    let mut a = Complex64::new(1.0, 0.0); // a_k / z^k
    let mut s1 = a;
    let mut s2 = a;
    let i = Complex64::i();
    let mut ik = Complex64::new(1.0, 0.0);
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        a = a * inv * ((mu - (2.0 * kf - 1.0).powi(2)) / (8.0 * kf));
        let mag = a.norm();
        if mag == 0.0 {
            break;
        }
        if mag > last {
            break;
        }
        ik *= i;
        s1 += ik * a;
        s2 += ik.conj() * a;
        last = mag;
        if mag < 1e-18 * s1.norm().min(s2.norm()) {
            break;
        }
    }
    (s1, s2)
}

/// Scaled (J, Y) via the Hankel expansions for Re z ≥ 0, |z| ≥ 20.
fn jy_hankel_scaled(nu: f64, z: Complex64) -> (Complex64, Complex64) {
    let (p1, p2) = hankel_sums(nu, z);
    let omega = z - nu * PI / 2.0 - PI / 4.0;
    let i = Complex64::i();
    let amp = (2.0 / (PI * z)).sqrt();
    let sc = z.im.abs();
    let h1 = amp * (i * omega - sc).exp() * p1;
    let h2 = amp * (-i * omega - sc).exp() * p2;
    ((h1 + h2) / 2.0, (h1 - h2) / (2.0 * i))
}

/// Scaled J_ν(z)·e^{−|Im z|} and, if requested, Y_ν(z)·e^{−|Im z|}.
pub(crate) fn jy_scaled(nu: f64, z: Complex64, want_y: bool) -> Result<(Complex64, Option<Complex64>)> {
    if !(z.re.is_finite() && z.im.is_finite() && nu.is_finite()) {
        return Err(Error::UnsupportedRange(format!("non-finite input z={z}, order={nu}")));
    }
    let r = z.norm();
    if r > MAX_MODULUS {
        return Err(Error::UnsupportedRange(format!("|z| = {r:e} exceeds {MAX_MODULUS:e}")));
    }
    if r == 0.0 && want_y {
        return Err(Error::OriginSingularity);
    }
    if r < SWITCH_RADIUS {
        let scale = (-z.im.abs()).exp();
        let j = j_series(nu, z)?;
        if !want_y {
            return Ok((j * scale, None));
        }
        let y = if is_integer(nu) {
            let n = nu.abs() as u32;
            let jn = if nu < 0.0 { j_series(n as f64, z)? } else { j };
            let yn = y_int_series(n, z, jn);
            if nu < 0.0 && n % 2 == 1 {
                -yn
            } else {
                yn
            }
        } else {
            let jm = j_series(-nu, z)?;
            let (s, c) = (nu * PI).sin_cos();
            (j * c - jm) / s
        };
        return Ok((j * scale, Some(y * scale)));
    }
    if z.re >= 0.0 {
        let (j, y) = jy_hankel_scaled(nu, z);
        return Ok((j, want_y.then_some(y)));
    }
    // Left half-plane: z = z' e^{imπ} with Re z' > 0.
    let zp = -z;
    let m = if z.im >= 0.0 { 1.0 } else { -1.0 };
    let (j, y) = jy_hankel_scaled(nu, zp);
    let i = Complex64::i();
    let jz = (i * m * nu * PI).exp() * j;
    let yz = (-i * m * nu * PI).exp() * y + 2.0 * i * m * (nu * PI).cos() * j;
    Ok((jz, want_y.then_some(yz)))
}
