//! The Legendre operator τ = −(d/dx)(1−x²)(d/dx) on (−1, 1).
//!
//! With ν(z) = (−1 + √(1+4z))/2 and D(z) = γ_E + ψ(1+ν), the generalized
//! boundary values at x = 1 of the system normalized at x = −1 are
//!
//! * φ̃ = (2/π) sin νπ,
//! * θ̃ = φ̃′ = cos νπ + (2/π) sin νπ · D,
//! * θ̃′ = −(π/2) sin νπ + 2 cos νπ · D + (2/π) sin νπ · D².
//!
//! For the separated family α = 0, 0 ≤ β < π, the large-z expansion of
//! ln F involves logarithms of z through D; the coefficients C_n of
//! D − γ_E − ln z^{1/2} = Σ C_n z^{−n}, the triangular table ω_{nk} of the
//! expansion of ln(1 + σΣC_n z^{−n}/L) and the resulting t-space terms are
//! produced exactly in rational arithmetic by [`asym_coeffs`].

use std::f64::consts::PI;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::continuation::{assemble_zeta, AsymptoticExpansion, ContinuationPlan, TermShape, ZetaResult};
use crate::error::{Error, Result};
use crate::series::{ps_log, PowerSeries};
use crate::slcore::{
    char_fn, BoundaryCondition, BoundaryValues, CharFn, FundamentalSeries, FundamentalValues, SpectralConstants,
};
use crate::specfun::{bernoulli, digamma, rational_to_f64, zeta_int, EULER_GAMMA};

/// Weyl constant c = ∫_{−1}^{1} dx/√(1−x²) = π.
pub const WEYL_C: f64 = PI;

/// Spectral constants of the Legendre operator.
pub fn spectral_constants() -> SpectralConstants {
    SpectralConstants::from_c(WEYL_C)
}

/// Order of the small-z series attached to the evaluators.
pub const SERIES_ORDER: usize = 30;
/// Radius within which the small-z series replaces the evaluator.
pub const SERIES_RADIUS: f64 = 0.05;

/// ν(z) = (−1 + √(1+4z))/2 with the principal square root.
pub fn nu_of_z(z: Complex64) -> Complex64 {
    0.5 * (-1.0 + (1.0 + 4.0 * z).sqrt())
}

/// Boundary values (θ̃, θ̃′, φ̃, φ̃′) at x = 1, scaled by e^{−|Im πν|}.
pub fn boundary_values(z: Complex64) -> Result<BoundaryValues> {
    let nu = nu_of_z(z);
    let x = PI * nu;
    let sigma = x.im.abs();
    let i = Complex64::i();
    let ep = (i * x - sigma).exp();
    let em = (-i * x - sigma).exp();
    let sn = (ep - em) / (2.0 * i);
    let cs = 0.5 * (ep + em);
    let d = EULER_GAMMA + digamma(1.0 + nu)?;
    let phi = 2.0 / PI * sn;
    let theta = cs + 2.0 / PI * sn * d;
    let theta_q = -0.5 * PI * sn + 2.0 * cs * d + 2.0 / PI * sn * d * d;
    Ok(BoundaryValues { theta, theta_q, phi, phi_q: theta, log_scale: sigma })
}

fn cplx(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Taylor series in z of ν(z): Σ_{n≥1} binom(1/2, n) 4ⁿ zⁿ / 2.
fn nu_series(order: usize) -> PowerSeries {
    let mut c = vec![cplx(0.0); order + 1];
    let mut binom = 1.0; // binom(1/2, n)
    for (n, cn) in c.iter_mut().enumerate().skip(1) {
        binom *= (0.5 - (n as f64 - 1.0)) / n as f64;
        *cn = cplx(0.5 * binom * 4f64.powi(n as i32));
    }
    PowerSeries::new(c)
}

/// Taylor series of sin(πy) and cos(πy) in y.
fn trig_series(order: usize) -> (PowerSeries, PowerSeries) {
    let mut s = vec![cplx(0.0); order + 1];
    let mut c = vec![cplx(0.0); order + 1];
    let mut term = 1.0; // π^j / j!
    for j in 0..=order {
        if j > 0 {
            term *= PI / j as f64;
        }
        match j % 4 {
            0 => c[j] = cplx(term),
            1 => s[j] = cplx(term),
            2 => c[j] = cplx(-term),
            _ => s[j] = cplx(-term),
        }
    }
    (PowerSeries::new(s), PowerSeries::new(c))
}

/// Taylor series of γ_E + ψ(1+y) = Σ_{k≥1} (−1)^{k+1} ζ(k+1) y^k.
fn digamma_series(order: usize) -> PowerSeries {
    let mut c = vec![cplx(0.0); order + 1];
    for (k, ck) in c.iter_mut().enumerate().skip(1) {
        let z = zeta_int(k as u32 + 1).expect("k + 1 ≥ 2");
        *ck = cplx(if k % 2 == 1 { z } else { -z });
    }
    PowerSeries::new(c)
}

/// Small-z series of the four boundary values, by composition of the
/// sin/cos/ψ series with the series of ν(z).
pub fn small_z_series(order: usize) -> Result<FundamentalSeries> {
    let nu = nu_series(order);
    let (s, c) = trig_series(order);
    let sn = s.compose(&nu)?;
    let cs = c.compose(&nu)?;
    let d = digamma_series(order).compose(&nu)?;
    let phi = sn.scale(&cplx(2.0 / PI));
    let theta = &cs + &(&phi * &d);
    let theta_q = &(&sn.scale(&cplx(-0.5 * PI)) + &(&cs * &d).scale(&cplx(2.0))) + &(&(&phi * &d) * &d);
    Ok(FundamentalSeries { theta: theta.clone(), theta_q, phi, phi_q: theta, radius: SERIES_RADIUS })
}

/// Boundary-value evaluator with the small-z series attached.
pub fn fundamental_values() -> Result<FundamentalValues> {
    Ok(FundamentalValues::new(Arc::new(boundary_values)).with_series(small_z_series(SERIES_ORDER)?))
}

/// Extensions with dedicated support.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LegendrePreset {
    /// Friedrichs extension α = β = 0: F = (2/π) sin νπ.
    Friedrichs,
    /// Separated α = 0, 0 < β < π: F = cos β φ̃ − sin β φ̃′.
    Separated0Beta(f64),
    /// Periodic extension φ = 0, R = I₂: F = 2 − θ̃ − φ̃′.
    Periodic,
}

impl LegendrePreset {
    /// The boundary condition realizing the preset.
    pub fn boundary_condition(&self) -> Result<BoundaryCondition> {
        match *self {
            LegendrePreset::Friedrichs => BoundaryCondition::separated(0.0, 0.0),
            LegendrePreset::Separated0Beta(beta) => {
                if !(beta > 0.0 && beta < PI) {
                    return Err(Error::ParameterOutOfRange(format!("β = {beta} must lie in (0, π)")));
                }
                BoundaryCondition::separated(0.0, beta)
            }
            LegendrePreset::Periodic => BoundaryCondition::coupled(0.0, [[1.0, 0.0], [0.0, 1.0]]),
        }
    }
}

/// Characteristic function for any boundary condition, with the small-z
/// series attached; the separated α = 0 family additionally carries its
/// large-z asymptotics.
pub fn char_fn_bc(bc: &BoundaryCondition) -> Result<CharFn> {
    let fv = fundamental_values()?;
    let cf = char_fn(&fv, bc)?;
    match *bc {
        BoundaryCondition::Separated { alpha, beta } if alpha == 0.0 => {
            let m0 = cf.m0();
            Ok(cf.with_asymptotics(Arc::new(move |psi, n| Ok(asym_coeffs(beta, psi, n)?.expansion(m0)))))
        }
        _ => Ok(cf),
    }
}

/// Characteristic function of a preset extension.
pub fn char_fn_preset(preset: LegendrePreset) -> Result<CharFn> {
    let cf = char_fn_bc(&preset.boundary_condition()?)?;
    Ok(match preset {
        // m0 = 2 is taken from the reference series, not inferred
        LegendrePreset::Periodic => cf.with_m0(2),
        LegendrePreset::Friedrichs => cf.with_m0(1),
        LegendrePreset::Separated0Beta(_) => cf,
    })
}

/// Exact asymptotic coefficients for the separated α = 0 family.
#[derive(Debug, Clone, PartialEq)]
pub struct LegendreAsym {
    /// C_1..C_N (index 0 holds C_0 = 0).
    pub c: Vec<BigRational>,
    /// ω_{nk} for 1 ≤ k ≤ n ≤ N (row n, column k; index 0 unused).
    pub omega: Vec<Vec<BigRational>>,
    /// λ = [γ_E − (i/2)(π−Ψ)] sin β − cos β.
    pub lambda_shift: Complex64,
    /// Order N.
    pub n: usize,
    /// β.
    pub beta: f64,
    /// Ray angle Ψ.
    pub psi: f64,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// C_n of D − γ_E − ln z^{1/2} ~ Σ_{n≥1} C_n z^{−n}, exact, n ≤ order.
///
/// In u = z^{−1/2}, ν/z^{1/2} = 1 − u/2 + Σ κ_n u^{2n} with
/// κ_n = binom(1/2, n)4^{−n}, and ψ(1+ν) = ln ν + 1/(2ν) − Σ B_{2k}/(2k ν^{2k});
/// C_n is the coefficient of u^{2n} in
/// ln(ν/w) + (u/2)(w/ν) − Σ_k (B_{2k}/2k) u^{2k}(w/ν)^{2k}.
pub fn c_coefficients(order: usize) -> Result<Vec<BigRational>> {
    let m = 2 * order + 1;
    let mut r = vec![BigRational::zero(); m + 1];
    r[0] = BigRational::one();
    r[1] = rat(-1, 2);
    let mut binom = BigRational::one();
    let mut n = 1;
    while 2 * n <= m {
        binom = binom * (rat(1, 2) - BigRational::from_integer(BigInt::from(n as i64 - 1))) / BigRational::from_integer(BigInt::from(n as i64));
        let four_n = BigRational::from_integer(BigInt::from(4).pow(n as u32));
        r[2 * n] = binom.clone() / four_n;
        n += 1;
    }
    let ratio = PowerSeries::new(r);
    let inv = ratio.inverse()?;
    let mut total = ps_log(&ratio)?;
    total = &total + &inv.shift(1).scale(&rat(1, 2));
    let inv2 = &inv * &inv;
    let mut inv_pow = PowerSeries::<BigRational>::one(m);
    for k in 1..=order {
        inv_pow = &inv_pow * &inv2;
        let coef = bernoulli(2 * k as u32) / BigRational::from_integer(BigInt::from(2 * k as i64));
        total = &total - &inv_pow.shift(2 * k).scale(&coef);
    }
    let mut c = vec![BigRational::zero(); order + 1];
    for (nn, cn) in c.iter_mut().enumerate().skip(1) {
        *cn = total.coeff(2 * nn).clone();
        debug_assert!(total.coeff(2 * nn - 1).is_zero());
    }
    Ok(c)
}

/// ω_{nk} = (−1)^{n+k}(C^{*k})_n / k.
pub fn omega_table(c: &[BigRational]) -> Vec<Vec<BigRational>> {
    let order = c.len() - 1;
    let mut cs = c.to_vec();
    cs[0] = BigRational::zero();
    let base = PowerSeries::new(cs);
    let mut table = vec![vec![BigRational::zero(); order + 1]; order + 1];
    let mut power = PowerSeries::<BigRational>::one(order);
    for k in 1..=order {
        power = &power * &base;
        for n in k..=order {
            let sign = if (n + k) % 2 == 0 { BigRational::one() } else { -BigRational::one() };
            table[n][k] = sign * power.coeff(n).clone() / BigRational::from_integer(BigInt::from(k as i64));
        }
    }
    table
}

/// κ_n = binom(1/2, n) 4^{−n} as a float.
fn kappa(n: usize) -> f64 {
    let mut b = 1.0;
    for j in 1..=n {
        b *= (0.5 - (j as f64 - 1.0)) / j as f64;
    }
    b / 4f64.powi(n as i32)
}

/// λ = [γ_E − (i/2)(π−Ψ)] sin β − cos β.
pub fn lambda_shift(beta: f64, psi: f64) -> Complex64 {
    Complex64::new(EULER_GAMMA, -0.5 * (PI - psi)) * beta.sin() - beta.cos()
}

/// Asymptotic coefficients for β ∈ [0, π), ray angle Ψ and order N ≤ 12.
pub fn asym_coeffs(beta: f64, psi: f64, n: usize) -> Result<LegendreAsym> {
    if n > 12 {
        return Err(Error::ParameterOutOfRange(format!("order N = {n} exceeds 12")));
    }
    if !(0.0..PI).contains(&beta) {
        return Err(Error::ParameterOutOfRange(format!("β = {beta} must lie in [0, π)")));
    }
    let c = c_coefficients(n.max(1))?;
    let omega = omega_table(&c);
    Ok(LegendreAsym { c, omega, lambda_shift: lambda_shift(beta, psi), n, beta, psi })
}

impl LegendreAsym {
    /// ω_{nk} as a float.
    pub fn omega_f64(&self, n: usize, k: usize) -> f64 {
        rational_to_f64(&self.omega[n][k])
    }

    /// L(z) = sin β(γ_E − iπ/2 + ln z^{1/2}) − cos β.
    fn bracket(&self, z: Complex64) -> Complex64 {
        let sb = self.beta.sin();
        sb * (Complex64::new(EULER_GAMMA, -0.5 * PI) + 0.5 * z.ln()) - self.beta.cos()
    }

    /// A_n(z) = (−1)^{n+1} Σ_k ω_{nk} sin^kβ L(z)^{−k}, the coefficient of
    /// z^{−n} in ln(1 + sin β Σ C_m z^{−m}/L).
    pub fn a_n(&self, n: usize, z: Complex64) -> Complex64 {
        let l = self.bracket(z);
        let sb = self.beta.sin();
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 1..=n {
            acc += self.omega_f64(n, k) * sb.powi(k as i32) * l.powi(-(k as i32));
        }
        if n % 2 == 1 {
            acc
        } else {
            -acc
        }
    }

    /// B_j(t): the coefficient of t^{−j−1} in the logarithmic part of
    /// d/dt ln F(te^{iΨ}), with the phase e^{−ijΨ} included.
    pub fn b_j(&self, j: usize, t: f64) -> Complex64 {
        let sb = self.beta.sin();
        let l = self.lambda_shift + 0.5 * sb * t.ln();
        if j == 0 {
            return sb / (2.0 * l);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 1..=j {
            let w = self.omega_f64(j, k) * sb.powi(k as i32);
            acc += w * (j as f64 * l.powi(-(k as i32)) + 0.5 * k as f64 * sb * l.powi(-(k as i32) - 1));
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sign * Complex64::from_polar(1.0, -(j as f64) * self.psi) * acc
    }

    /// Power-term coefficient iπκ_n(n − 1/2)e^{−i(n−1/2)Ψ} of t^{−n−1/2}.
    pub fn power_coefficient(&self, n: usize) -> Complex64 {
        let nf = n as f64;
        Complex64::i() * PI * kappa(n) * (nf - 0.5) * Complex64::from_polar(1.0, -(nf - 0.5) * self.psi)
    }

    /// The t-space [`AsymptoticExpansion`] for zero multiplicity `m0`.
    pub fn expansion(&self, _m0: usize) -> AsymptoticExpansion {
        let sb = self.beta.sin();
        let lam = self.lambda_shift;
        let mut terms = Vec::new();
        for n in 1..=self.n {
            terms.push((self.power_coefficient(n), TermShape::PurePower { exponent: -(n as f64) - 0.5 }));
        }
        if sb != 0.0 {
            terms.push((cplx(0.5 * sb), TermShape::LogReciprocalPower { power_n: 0, log_k: 1, lambda_shift: lam, sin_beta: sb }));
            for j in 1..=self.n {
                let phase = Complex64::from_polar(if j % 2 == 0 { 1.0 } else { -1.0 }, -(j as f64) * self.psi);
                for k in 1..=j {
                    let w = self.omega_f64(j, k) * sb.powi(k as i32);
                    let (ju, ku) = (j as u32, k as u32);
                    terms.push((
                        phase * w * 0.5 * k as f64 * sb,
                        TermShape::LogReciprocalPower { power_n: ju, log_k: ku + 1, lambda_shift: lam, sin_beta: sb },
                    ));
                    terms.push((
                        phase * w * j as f64,
                        TermShape::LogReciprocalPower { power_n: ju, log_k: ku, lambda_shift: lam, sin_beta: sb },
                    ));
                }
            }
        }
        AsymptoticExpansion::new(WEYL_C, self.psi, terms, self.n, self.n as f64 + 1.5)
            .expect("positive Weyl constant and exponents below −1/2")
    }
}

/// Asymptotic approximation of d/dt ln F_{0,β}(te^{iΨ}) truncated at N.
pub fn logderiv_asym(beta: f64, psi: f64, n: usize, t: f64) -> Result<Complex64> {
    Ok(asym_coeffs(beta, psi, n)?.expansion(0).subtracted(t, 0))
}

/// Continued ζ(s) of the α = 0 extension with parameter β ∈ [0, π)
/// (β = 0 is the Friedrichs extension), split point C = 1.
pub fn zeta_continued(beta: f64, s: Complex64, n: usize, psi: f64) -> Result<ZetaResult> {
    zeta_continued_with_split(beta, s, n, psi, 1.0)
}

/// [`zeta_continued`] with an explicit split point C.
pub fn zeta_continued_with_split(beta: f64, s: Complex64, n: usize, psi: f64, c_split: f64) -> Result<ZetaResult> {
    let preset = if beta == 0.0 { LegendrePreset::Friedrichs } else { LegendrePreset::Separated0Beta(beta) };
    let cf = char_fn_preset(preset)?;
    let plan = ContinuationPlan::new(psi, c_split, cf.m0())?;
    let asym = asym_coeffs(beta, psi, n)?.expansion(cf.m0());
    assemble_zeta(&plan, &cf, &asym, s)
}

/// Target of a reference closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedFormTarget {
    /// A general boundary condition (ζ(1) only).
    Bc(BoundaryCondition),
    /// A preset extension.
    Preset(LegendrePreset),
}

/// Reference closed-form values ζ(n) for the Legendre extensions.
pub fn zeta_closed_forms(target: ClosedFormTarget, n: usize) -> Result<Complex64> {
    let pi2 = PI * PI;
    let z3 = zeta_int(3).expect("ζ(3)");
    let unavailable = || Error::FormulaUnavailable(format!("no reference formula for n = {n}"));
    match target {
        ClosedFormTarget::Preset(LegendrePreset::Friedrichs) => match n {
            1 => Ok(cplx(1.0)),
            2 => Ok(cplx(pi2 / 3.0 - 3.0)),
            3 => Ok(cplx(10.0 - pi2)),
            _ => Err(unavailable()),
        },
        ClosedFormTarget::Preset(LegendrePreset::Periodic) => match n {
            1 => Ok(cplx(2.0 - 12.0 / pi2 * z3)),
            2 => Ok(cplx((100.0 * pi2 - pi2 * pi2 - 720.0 * z3) / (20.0 * (pi2 - 6.0 * z3)))),
            _ => Err(unavailable()),
        },
        ClosedFormTarget::Preset(p @ LegendrePreset::Separated0Beta(_)) => {
            zeta_closed_forms(ClosedFormTarget::Bc(p.boundary_condition()?), n)
        }
        ClosedFormTarget::Bc(_) if n != 1 => Err(unavailable()),
        ClosedFormTarget::Bc(BoundaryCondition::Separated { alpha, beta }) => {
            let (sa, ca) = alpha.sin_cos();
            let (sb, cb) = beta.sin_cos();
            let a0 = -sa * cb - ca * sb;
            if a0.abs() > 1e-12 {
                Ok(cplx((12.0 * ca * cb - pi2 * sa * sb) / (6.0 * (sa * cb + ca * sb))))
            } else {
                let num = ca * (pi2 * sb - 12.0 * cb) + sa * (pi2 * sb + pi2 * cb - 12.0 * z3 * sb);
                Ok(cplx(num / (pi2 * sa * sb - 12.0 * ca * cb)))
            }
        }
        ClosedFormTarget::Bc(BoundaryCondition::Coupled { phi, r }) => {
            let e = Complex64::from_polar(1.0, phi);
            let a0 = -e * (r[0][0] + r[1][1]) + e * e + 1.0;
            if a0.norm() > 1e-12 {
                Ok(e * (pi2 * r[0][1] - 12.0 * r[1][0]) / (6.0 * a0))
            } else {
                let den = pi2 * r[0][1] - 12.0 * r[1][0];
                if den.abs() < 1e-12 {
                    return Err(Error::FormulaUnavailable("zero eigenvalue of multiplicity two".into()));
                }
                Ok(cplx((pi2 * r[0][0] + (pi2 - 12.0 * z3) * r[0][1] - 12.0 * r[1][0] + pi2 * r[1][1]) / den))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nu_map() {
        assert_eq!(nu_of_z(cplx(0.0)), cplx(0.0));
        assert!((nu_of_z(cplx(2.0)) - 1.0).norm() < 1e-15);
        for n in 1..=5 {
            let nf = n as f64;
            assert!((nu_of_z(cplx(nf * (nf + 1.0))) - nf).norm() < 1e-14);
        }
    }

    #[test]
    fn reference_c_table() {
        let c = c_coefficients(6).unwrap();
        let expect = [rat(1, 6), rat(-1, 30), rat(4, 315), rat(-1, 105), rat(16, 1155), rat(-1528, 45045)];
        for (j, e) in expect.iter().enumerate() {
            assert_eq!(&c[j + 1], e, "C_{}", j + 1);
        }
    }

    #[test]
    fn boundary_values_at_zero_and_two() {
        let b = boundary_values(cplx(0.0)).unwrap();
        assert!((b.theta - 1.0).norm() < 1e-15 && b.theta_q.norm() < 1e-15 && b.phi.norm() < 1e-15);
        let b = boundary_values(cplx(2.0)).unwrap();
        assert!(b.phi.norm() < 1e-15 && (b.theta + 1.0).norm() < 1e-14);
    }
}
