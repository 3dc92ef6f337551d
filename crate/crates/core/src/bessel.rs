//! The generalized Bessel operator on (0, b):
//!
//! τ = x^{−δ}[−(d/dx)x^ν(d/dx) + ((κγ)² − (1−ν)²)/4 · x^{ν−2}],  κ = 2+δ−ν,
//!
//! quasi-regular at x = 0 for 0 ≤ γ < 1 and regular at x = b.  With
//! w = 2z^{1/2}b^{κ/2}/κ the fundamental system normalized at 0 is
//!
//! * φ = (1−ν)^{−1}κ^γΓ(1+γ)z^{−γ/2}·y₁,
//! * θ = (1−ν)κ^{−γ−1}γ^{−1}Γ(1−γ)z^{γ/2}·y₂ for γ ∈ (0, 1),
//! * θ = (1−ν)κ^{−1}[−πy₂ + (ln z − 2 ln κ + 2γ_E)y₁] for γ = 0,
//!
//! with y₁ = x^{(1−ν)/2}J_γ(w(x)) and y₂ = x^{(1−ν)/2}J_{−γ}(w(x)) (Y₀ for
//! γ = 0).  The worked extension α = π/2, β = 0, γ = 0 has a logarithmic
//! large-z expansion, which makes ζ(s) = −s ln s + O(1) at s = 0.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::continuation::{
    assemble_zeta, det_reg as det_reg_plan, AsymptoticExpansion, ContinuationPlan, DetReg, TermShape, ZetaResult,
};
use crate::error::{Error, Result};
use crate::series::{ps_log, PowerSeries};
use crate::slcore::{
    char_fn, char_fn_coupled, char_fn_separated, BoundaryCondition, BoundaryValues, CharFn, CoefFn, EndpointClass,
    FundamentalSeries, FundamentalValues, Jet, SLProblem, SpectralConstants,
};
use crate::specfun::{bessel_scaled, gamma_real, BesselKind, EULER_GAMMA};

/// Order of the small-z series attached to the evaluators.
pub const SERIES_ORDER: usize = 30;

/// Below this |z| the evaluator sums the series instead of calling the
/// cylinder functions (whose limits at z = 0 are removable singularities).
const DIRECT_SERIES_RADIUS: f64 = 1e-6;

/// Parameters (δ, ν, γ, b) of the generalized Bessel operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselParams {
    delta: f64,
    nu: f64,
    gamma: f64,
    b: f64,
}

impl BesselParams {
    /// Validated parameters: δ > −1, ν < 1, 0 ≤ γ < 1, b > 0.
    pub fn new(delta: f64, nu: f64, gamma: f64, b: f64) -> Result<Self> {
        if !(delta > -1.0 && delta.is_finite()) {
            return Err(Error::ParameterOutOfRange(format!("δ = {delta} must exceed −1")));
        }
        if !(nu < 1.0 && nu.is_finite()) {
            return Err(Error::ParameterOutOfRange(format!("ν = {nu} must be below 1")));
        }
        if !(0.0..1.0).contains(&gamma) {
            return Err(Error::ParameterOutOfRange(format!("γ = {gamma} must lie in [0, 1)")));
        }
        if !(b > 0.0 && b.is_finite()) {
            return Err(Error::ParameterOutOfRange(format!("b = {b} must be positive")));
        }
        Ok(BesselParams { delta, nu, gamma, b })
    }

    /// The standard Bessel case δ = ν = γ = 0, b = 1.
    pub fn standard() -> Self {
        BesselParams { delta: 0.0, nu: 0.0, gamma: 0.0, b: 1.0 }
    }

    /// δ.
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// ν.
    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// γ.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// b.
    pub fn b(&self) -> f64 {
        self.b
    }

    /// κ = 2 + δ − ν.
    pub fn kappa(&self) -> f64 {
        2.0 + self.delta - self.nu
    }

    /// B = b^{κ/2}/κ, so that w = 2Bz^{1/2} at x = b.
    fn big_b(&self) -> f64 {
        self.b.powf(0.5 * self.kappa()) / self.kappa()
    }

    /// Weyl constant c = ∫₀^b √(r/p) dx = 2b^{κ/2}/κ.
    pub fn weyl_c(&self) -> f64 {
        2.0 * self.big_b()
    }

    /// Radius within which the small-z series replaces the evaluator.
    pub fn series_radius(&self) -> f64 {
        0.5 / (self.big_b() * self.big_b())
    }

    /// The operator as an [`SLProblem`] with p = x^ν, q = ((κγ)² − (1−ν)²)/4·x^{ν−2}, r = x^δ.
    pub fn problem(&self) -> Result<SLProblem> {
        let (nu, delta) = (self.nu, self.delta);
        let qc = ((self.kappa() * self.gamma).powi(2) - (1.0 - nu).powi(2)) / 4.0;
        let p: CoefFn = Arc::new(move |x: Jet| x.powf(nu));
        let q: CoefFn = Arc::new(move |x: Jet| x.powf(nu - 2.0) * qc);
        let r: CoefFn = Arc::new(move |x: Jet| x.powf(delta));
        SLProblem::new(0.0, self.b, p, q, r, [EndpointClass::QuasiRegular, EndpointClass::Regular])
    }
}

/// Spectral constants: c = 2b^{κ/2}/κ, ρ = 1/2.
pub fn spectral_constants(p: &BesselParams) -> SpectralConstants {
    SpectralConstants::from_c(p.weyl_c())
}

fn cplx(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Values at x = b of y = x^{(1−ν)/2}C(w(x)) and y^{[1]} = x^ν y′ for a
/// cylinder function C, scaled by e^{−|Im w|}.
fn cylinder_pair(p: &BesselParams, kind: BesselKind, order: f64, z: Complex64, w: Complex64) -> Result<(Complex64, Complex64)> {
    let c = bessel_scaled(kind, order, w)?;
    let dc = 0.5 * (bessel_scaled(kind, order - 1.0, w)? - bessel_scaled(kind, order + 1.0, w)?);
    let nu = p.nu;
    let y = p.b.powf(0.5 * (1.0 - nu)) * c;
    let yq = 0.5 * (1.0 - nu) * p.b.powf(0.5 * (nu - 1.0)) * c + z.sqrt() * p.b.powf(0.5 * (1.0 + p.delta)) * dc;
    Ok((y, yq))
}

/// Boundary values (θ̃, θ̃′, φ̃, φ̃′) at x = b, scaled by e^{−|Im w|},
/// evaluated from the cylinder functions (no series shortcut).
fn boundary_values_direct(p: &BesselParams, z: Complex64) -> Result<BoundaryValues> {
    let (nu, g, k) = (p.nu, p.gamma, p.kappa());
    let w = 2.0 * p.big_b() * z.sqrt();
    let (y1, y1q) = cylinder_pair(p, BesselKind::J, g, z, w)?;
    let cphi = k.powf(g) * gamma_real(1.0 + g)? / (1.0 - nu) * z.powf(-0.5 * g);
    let (phi, phi_q) = (cphi * y1, cphi * y1q);
    let (theta, theta_q) = if g == 0.0 {
        let (y2, y2q) = cylinder_pair(p, BesselKind::Y, 0.0, z, w)?;
        let lz = z.ln() - 2.0 * k.ln() + 2.0 * EULER_GAMMA;
        let c = (1.0 - nu) / k;
        (c * (-PI * y2 + lz * y1), c * (-PI * y2q + lz * y1q))
    } else {
        let (y2, y2q) = cylinder_pair(p, BesselKind::J, -g, z, w)?;
        let c = (1.0 - nu) * k.powf(-g - 1.0) / g * gamma_real(1.0 - g)? * z.powf(0.5 * g);
        (c * y2, c * y2q)
    };
    Ok(BoundaryValues { theta, theta_q, phi, phi_q, log_scale: w.im.abs() })
}

fn series_values(s: &FundamentalSeries, z: Complex64) -> BoundaryValues {
    BoundaryValues { theta: s.theta.eval(z), theta_q: s.theta_q.eval(z), phi: s.phi.eval(z), phi_q: s.phi_q.eval(z), log_scale: 0.0 }
}

/// Boundary values (θ̃, θ̃′, φ̃, φ̃′) at x = b, scaled by e^{−|Im w|}.
///
/// Since b is a regular endpoint these are plain values and
/// quasi-derivatives of the fundamental system normalized at x = 0.
pub fn boundary_values(p: &BesselParams, z: Complex64) -> Result<BoundaryValues> {
    if z.norm() < DIRECT_SERIES_RADIUS {
        return Ok(series_values(&small_z_series(p, 8)?, z));
    }
    boundary_values_direct(p, z)
}

/// Evaluator with the small-z series attached.
pub fn fundamental_values(p: &BesselParams) -> Result<FundamentalValues> {
    let series = small_z_series(p, SERIES_ORDER)?;
    let near = series.truncate_to(8);
    let pp = *p;
    let eval = Arc::new(move |z: Complex64| {
        if z.norm() < DIRECT_SERIES_RADIUS {
            Ok(series_values(&near, z))
        } else {
            boundary_values_direct(&pp, z)
        }
    });
    Ok(FundamentalValues::new(eval).with_series(series))
}

/// H_j = 1 + 1/2 + … + 1/j.
fn harmonic_f64(j: usize) -> f64 {
    (1..=j).map(|m| 1.0 / m as f64).sum()
}

/// Taylor series in z of the four boundary values at x = b, with the
/// exact Γ / harmonic-number coefficients.
pub fn small_z_series(p: &BesselParams, order: usize) -> Result<FundamentalSeries> {
    if order > SERIES_ORDER {
        return Err(Error::InvalidInput(format!("series order {order} exceeds {SERIES_ORDER}")));
    }
    let (nu, g, k, b) = (p.nu, p.gamma, p.kappa(), p.b);
    let lb = b.ln();
    let mut phi = Vec::with_capacity(order + 1);
    let mut phi_q = Vec::with_capacity(order + 1);
    let mut theta = Vec::with_capacity(order + 1);
    let mut theta_q = Vec::with_capacity(order + 1);
    let g1p = gamma_real(1.0 + g)?;
    for j in 0..=order {
        let jf = j as f64;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let fact = gamma_real(jf + 1.0)?;
        let k2j = k.powi(2 * j as i32);
        let base = sign * b.powf(k * jf) / (k2j * fact);
        let pg = base * g1p / ((1.0 - nu) * gamma_real(g + jf + 1.0)?);
        phi.push(cplx(pg * b.powf(0.5 * (1.0 - nu + g * k))));
        phi_q.push(cplx(pg * (2.0 * k * jf + 1.0 - nu + g * k) / 2.0 * b.powf(0.5 * (nu - 1.0 + g * k))));
        if g == 0.0 {
            let hl = 2.0 * harmonic_f64(j) - k * lb;
            let tb = base / fact * (1.0 - nu);
            theta.push(cplx(tb * hl / k * b.powf(0.5 * (1.0 - nu))));
            theta_q.push(cplx(tb * ((2.0 * k * jf + 1.0 - nu) * hl / (2.0 * k) - 1.0) * b.powf(0.5 * (nu - 1.0))));
        } else {
            let tg = base * (1.0 - nu) * gamma_real(1.0 - g)? / (g * k * gamma_real(jf + 1.0 - g)?);
            theta.push(cplx(tg * b.powf(0.5 * (1.0 - nu - g * k))));
            theta_q.push(cplx(tg * (2.0 * k * jf + 1.0 - nu - g * k) / 2.0 * b.powf(0.5 * (nu - 1.0 - g * k))));
        }
    }
    Ok(FundamentalSeries {
        theta: PowerSeries::new(theta),
        theta_q: PowerSeries::new(theta_q),
        phi: PowerSeries::new(phi),
        phi_q: PowerSeries::new(phi_q),
        radius: p.series_radius(),
    })
}

trait Truncate {
    fn truncate_to(&self, n: usize) -> Self;
}

impl Truncate for FundamentalSeries {
    fn truncate_to(&self, n: usize) -> Self {
        FundamentalSeries {
            theta: self.theta.truncate(n),
            theta_q: self.theta_q.truncate(n),
            phi: self.phi.truncate(n),
            phi_q: self.phi_q.truncate(n),
            radius: self.radius,
        }
    }
}

/// The Krein–von Neumann coupling matrix R_K = [[θ̃(0), φ̃(0)], [θ̃′(0), φ̃′(0)]].
pub fn kvn_matrix(p: &BesselParams) -> Result<[[f64; 2]; 2]> {
    let s = small_z_series(p, 0)?;
    Ok([[s.theta.coeff(0).re, s.phi.coeff(0).re], [s.theta_q.coeff(0).re, s.phi_q.coeff(0).re]])
}

/// Reference small-z series of F_K(z) = −2(D(z) − 1) up to `order`.
fn kvn_series(p: &BesselParams, order: usize) -> Result<PowerSeries> {
    let (g, k, b) = (p.gamma, p.kappa(), p.b);
    let mut c = vec![cplx(0.0); order + 1];
    for (j, cj) in c.iter_mut().enumerate().skip(2) {
        let jf = j as f64;
        let fact = gamma_real(jf + 1.0)?;
        let base = b.powf(k * jf) / (k.powi(2 * j as i32) * fact);
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        *cj = cplx(if g == 0.0 {
            2.0 * sign * base / fact * (jf * harmonic_f64(j) - 1.0)
        } else {
            let bracket = gamma_real(g)? / gamma_real(jf + g)? + gamma_real(-g)? / gamma_real(jf - g)?;
            -sign * base * bracket
        });
    }
    Ok(PowerSeries::new(c))
}

/// Characteristic function of the Krein–von Neumann extension (φ = 0,
/// R = R_K) with m0 = 2 and its reference small-z series attached.
pub fn kvn_char_series(p: &BesselParams, order: usize) -> Result<CharFn> {
    if order < 4 {
        return Err(Error::InsufficientOrder { needed: 4, have: order });
    }
    let fv = fundamental_values(p)?;
    let cf = char_fn_coupled(&fv, 0.0, kvn_matrix(p)?)?;
    Ok(cf.with_series(kvn_series(p, order)?, p.series_radius()).with_m0(2))
}

/// Characteristic function for any boundary condition; the worked
/// extension α = π/2, β = 0 with γ = 0 additionally carries its large-z
/// asymptotics.
pub fn char_fn_bc(p: &BesselParams, bc: &BoundaryCondition) -> Result<CharFn> {
    let fv = fundamental_values(p)?;
    let cf = char_fn(&fv, bc)?;
    match *bc {
        BoundaryCondition::Separated { alpha, beta } if is_worked(p, alpha, beta) => {
            let pp = *p;
            let m0 = cf.m0();
            Ok(cf.with_asymptotics(Arc::new(move |psi, n| Ok(asym_coeffs(&pp, psi, n)?.expansion(m0)))))
        }
        _ => Ok(cf),
    }
}

fn is_worked(p: &BesselParams, alpha: f64, beta: f64) -> bool {
    p.gamma == 0.0 && (alpha - PI / 2.0).abs() < 1e-15 && beta == 0.0
}

/// Characteristic function of the worked extension α = π/2, β = 0 (γ = 0).
pub fn char_fn_worked(p: &BesselParams) -> Result<CharFn> {
    require_gamma_zero(p)?;
    let fv = fundamental_values(p)?;
    let cf = char_fn_separated(&fv, PI / 2.0, 0.0)?;
    let pp = *p;
    let m0 = cf.m0();
    Ok(cf.with_asymptotics(Arc::new(move |psi, n| Ok(asym_coeffs(&pp, psi, n)?.expansion(m0)))))
}

fn require_gamma_zero(p: &BesselParams) -> Result<()> {
    if p.gamma != 0.0 {
        return Err(Error::ParameterOutOfRange(format!(
            "the worked extension requires γ = 0 (got {})",
            p.gamma
        )));
    }
    Ok(())
}

/// Large-z data of the worked extension.
#[derive(Debug, Clone, PartialEq)]
pub struct BesselAsym {
    /// μ = −ln κ + γ_E − i(π−Ψ)/2.
    pub mu: Complex64,
    /// ā_1..ā_N (index 0 holds ā_0 = 0).
    pub abar: Vec<Complex64>,
    /// Hankel coefficients a_0..a_N, a_k = Γ(1/2+k)²/((−2)^k π k!).
    pub a_hankel: Vec<f64>,
    /// Order N.
    pub n: usize,
    /// Ray angle Ψ.
    pub psi: f64,
    /// Weyl constant c = 2b^{κ/2}/κ.
    pub weyl_c: f64,
}

/// a_k = Γ(1/2+k)²/((−2)^k π k!) for k = 0..=n.
pub fn hankel_coefficients(n: usize) -> Vec<f64> {
    let mut a = Vec::with_capacity(n + 1);
    let mut cur = 1.0; // a_0
    a.push(cur);
    for k in 1..=n {
        // a_k / a_{k−1} = (k − 1/2)² / (−2k)
        let h = k as f64 - 0.5;
        cur *= h * h / (-2.0 * k as f64);
        a.push(cur);
    }
    a
}

/// μ, ā_j and the Hankel coefficients for ray angle Ψ and order N.
///
/// ā_j are the coefficients of y^j in
/// ln[1 + Σ_k (−i)^k(2B)^{−k}a_k e^{−ikΨ/2} y^k], y = t^{−1/2}.
pub fn asym_coeffs(p: &BesselParams, psi: f64, n: usize) -> Result<BesselAsym> {
    require_gamma_zero(p)?;
    if !(psi > PI / 2.0 && psi < PI) {
        return Err(Error::ParameterOutOfRange(format!("Ψ = {psi} must lie in (π/2, π)")));
    }
    let a = hankel_coefficients(n);
    let two_b = 2.0 * p.big_b();
    let mut c = Vec::with_capacity(n + 1);
    for (k, ak) in a.iter().enumerate() {
        let kf = k as f64;
        c.push(Complex64::new(0.0, -1.0).powi(k as i32) * two_b.powf(-kf) * *ak * Complex64::from_polar(1.0, -0.5 * kf * psi));
    }
    let abar = ps_log(&PowerSeries::new(c))?.into_coeffs();
    let mu = Complex64::new(-p.kappa().ln() + EULER_GAMMA, -0.5 * (PI - psi));
    Ok(BesselAsym { mu, abar, a_hankel: a, n, psi, weyl_c: p.weyl_c() })
}

impl BesselAsym {
    /// The t-space [`AsymptoticExpansion`] of d/dt ln F(te^{iΨ}); the
    /// continuation engine subtracts m0/t on top of it.
    pub fn expansion(&self, _m0: usize) -> AsymptoticExpansion {
        let mut terms = vec![
            (
                cplx(0.5),
                TermShape::LogReciprocalPower { power_n: 0, log_k: 1, lambda_shift: self.mu, sin_beta: 1.0 },
            ),
            (cplx(-0.25), TermShape::PurePower { exponent: -1.0 }),
        ];
        for j in 1..=self.n {
            let jf = j as f64;
            terms.push((-0.5 * jf * self.abar[j], TermShape::PurePower { exponent: -0.5 * (2.0 + jf) }));
        }
        AsymptoticExpansion::new(self.weyl_c, self.psi, terms, self.n, 0.5 * (self.n as f64 + 3.0))
            .expect("positive Weyl constant and exponents below −1/2")
    }
}

/// Asymptotic approximation of d/dt ln F(te^{iΨ}) for the worked extension
/// truncated at order N (t ≥ 1).
pub fn logderiv_asym(p: &BesselParams, t: f64, psi: f64, n: usize) -> Result<Complex64> {
    if !(t >= 1.0) {
        return Err(Error::ParameterOutOfRange(format!("t = {t} must be at least 1")));
    }
    Ok(asym_coeffs(p, psi, n)?.expansion(0).subtracted(t, 0))
}

/// Continued ζ(s) of the worked extension, split point C = 1.
pub fn zeta_continued(p: &BesselParams, s: Complex64, n: usize, psi: f64) -> Result<ZetaResult> {
    zeta_continued_with_split(p, s, n, psi, 1.0)
}

/// [`zeta_continued`] with an explicit split point C.
pub fn zeta_continued_with_split(p: &BesselParams, s: Complex64, n: usize, psi: f64, c_split: f64) -> Result<ZetaResult> {
    let cf = char_fn_worked(p)?;
    let plan = ContinuationPlan::new(psi, c_split, cf.m0())?;
    let asym = asym_coeffs(p, psi, n)?.expansion(cf.m0());
    assemble_zeta(&plan, &cf, &asym, s)
}

/// Regularized determinant exp(−ζ_reg′(0)) of the worked extension,
/// ζ_reg(s) = ζ(s) + s ln s.
pub fn det_reg(p: &BesselParams, n: usize, psi: f64) -> Result<DetReg> {
    let cf = char_fn_worked(p)?;
    let plan = ContinuationPlan::new(psi, 1.0, cf.m0())?;
    let asym = asym_coeffs(p, psi, n)?.expansion(cf.m0());
    det_reg_plan(&plan, &cf, &asym)
}

/// Target of a reference closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BesselTarget {
    /// Separated or coupled conditions (δ = ν = γ = 0, ζ(1) only).
    Bc(BoundaryCondition),
    /// The Krein–von Neumann extension (ζ(1)..ζ(4), general parameters).
    KreinVonNeumann,
}

/// Reference closed-form values ζ(n).
pub fn zeta_closed_forms(p: &BesselParams, target: BesselTarget, n: usize) -> Result<Complex64> {
    let unavailable = |why: &str| Error::FormulaUnavailable(format!("{why} (n = {n})"));
    match target {
        BesselTarget::KreinVonNeumann => {
            let g2 = p.gamma * p.gamma;
            let k = p.kappa();
            let bk = p.b.powf(k);
            let f4 = 4.0 - g2;
            let f9 = 9.0 - g2;
            let f16 = 16.0 - g2;
            let f25 = 25.0 - g2;
            let v = match n {
                1 => bk / (f4 * k * k),
                2 => (g2 * g2 + g2 + 10.0) * bk.powi(2) / (6.0 * f4 * f4 * f9 * k.powi(4)),
                3 => (g2.powi(3) + 7.0 * g2 * g2 + 8.0 * g2 + 32.0) * bk.powi(3) / (4.0 * f4.powi(3) * f9 * f16 * k.powi(6)),
                4 => {
                    let num = g2.powi(6) - 271.0 * g2.powi(5) + 995.0 * g2.powi(4) + 11355.0 * g2.powi(3)
                        + 67240.0 * g2 * g2
                        + 66856.0 * g2
                        + 216704.0;
                    num * bk.powi(4) / (360.0 * f4.powi(4) * f9 * f9 * f16 * f25 * k.powi(8))
                }
                _ => return Err(unavailable("available for n = 1..4 only")),
            };
            Ok(cplx(v))
        }
        BesselTarget::Bc(bc) => {
            if p.delta != 0.0 || p.nu != 0.0 || p.gamma != 0.0 {
                return Err(unavailable("available for δ = ν = γ = 0 only"));
            }
            if n != 1 {
                return Err(unavailable("available for n = 1 only"));
            }
            let b = p.b;
            let lb = b.ln();
            match bc {
                BoundaryCondition::Separated { alpha, beta } => {
                    let (sa, ca) = alpha.sin_cos();
                    let (sb, cb) = beta.sin_cos();
                    let a0 = (2.0 * b * cb * (ca + sa * lb) - sb * (ca + (2.0 + lb) * sa)) / (2.0 * b.sqrt());
                    let a1 = b.powf(1.5) / 8.0 * (sb * (5.0 * ca + sa * (5.0 * lb - 3.0)) - 2.0 * b * cb * (ca + sa * (lb - 1.0)));
                    if a0.abs() > 1e-12 {
                        let num = b * b * (2.0 * b * cb * (ca + sa * (lb - 1.0)) + sb * (sa * (3.0 - 5.0 * lb) - 5.0 * ca));
                        let den = 8.0 * b * cb * (ca + sa * lb) - 4.0 * sb * (ca + sa * (lb + 2.0));
                        Ok(cplx(num / den))
                    } else if a1.abs() > 1e-12 {
                        let num = b * b
                            * (2.0 * b * cb * (2.0 * ca + sa * (2.0 * lb - 3.0)) + sb * (sa * (23.0 - 18.0 * lb) - 18.0 * ca));
                        let den = 64.0 * b * cb * (ca + sa * (lb - 1.0)) - 32.0 * sb * (5.0 * ca + sa * (5.0 * lb - 3.0));
                        Ok(cplx(num / den))
                    } else {
                        Err(unavailable("zero eigenvalue of multiplicity two"))
                    }
                }
                BoundaryCondition::Coupled { phi, r } => {
                    let (r11, r12, r21, r22) = (r[0][0], r[0][1], r[1][0], r[1][1]);
                    let a0 = lb * (r12 - 2.0 * b * r22) - 2.0 * b * r21 - 4.0 * b.sqrt() * phi.cos() + r11 + 2.0 * r12;
                    let a1 = lb * (5.0 * r12 - 2.0 * b * r22) - 2.0 * b * r21 + 2.0 * b * r22 + 5.0 * r11 - 3.0 * r12;
                    if a0.abs() > 1e-12 {
                        Ok(cplx(b * b * (lb * (5.0 * r12 - 2.0 * b * r22) - 2.0 * b * (r21 - r22) + 5.0 * r11 - 3.0 * r12) / (4.0 * a0)))
                    } else if a1.abs() > 1e-12 {
                        let num = b * b
                            * (2.0 * lb * (9.0 * r12 - 2.0 * b * r22) - 2.0 * b * (2.0 * r21 - 3.0 * r22) + 18.0 * r11 - 23.0 * r12);
                        Ok(cplx(num / (32.0 * a1)))
                    } else {
                        Err(unavailable("zero eigenvalue of multiplicity two"))
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_validation() {
        assert!(BesselParams::new(-1.0, 0.0, 0.0, 1.0).is_err());
        assert!(BesselParams::new(0.0, 1.0, 0.0, 1.0).is_err());
        assert!(BesselParams::new(0.0, 0.0, 1.0, 1.0).is_err());
        assert!(BesselParams::new(0.0, 0.0, 0.0, 0.0).is_err());
        assert!(BesselParams::new(0.5, -0.5, 0.25, 2.0).is_ok());
    }

    #[test]
    fn hankel_first_coefficient() {
        let a = hankel_coefficients(3);
        assert_eq!(a[0], 1.0);
        assert!((a[1] + 0.125).abs() < 1e-16);
        // Γ(5/2)² / (4π·2) = (9π/16)/(8π) = 9/128
        assert!((a[2] - 9.0 / 128.0).abs() < 1e-16);
    }

    #[test]
    fn kvn_second_coefficient_standard() {
        let s = kvn_series(&BesselParams::standard(), 4).unwrap();
        assert_eq!(s.coeff(0).norm(), 0.0);
        assert_eq!(s.coeff(1).norm(), 0.0);
        assert!((s.coeff(2).re - 1.0 / 16.0).abs() < 1e-15, "{}", s.coeff(2));
    }

    #[test]
    fn kvn_matrix_is_unimodular() {
        for &(d, n, g, b) in &[(0.0, 0.0, 0.0, 1.0), (0.5, -0.5, 0.25, 2.0), (-0.5, 0.5, 0.5, 0.5)] {
            let r = kvn_matrix(&BesselParams::new(d, n, g, b).unwrap()).unwrap();
            assert!((r[0][0] * r[1][1] - r[0][1] * r[1][0] - 1.0).abs() < 1e-13);
        }
    }
}
