//! Analytic continuation of ζ(s) by asymptotic subtraction.
//!
//! Along the ray z = te^{iΨ}, Ψ ∈ (π/2, π), the reduced logarithmic
//! derivative g(t) = d/dt ln[(te^{iΨ})^{−m0}F(te^{iΨ})] has a large-t
//! expansion S(t) = −(i/2)c e^{iΨ/2}t^{−1/2} − m0/t + Σ cₙ ωₙ(t).  With
//! P(s) = e^{is(π−Ψ)} sin(πs)/π,
//!
//! ζ(s) = P(s)·{∫₀^∞ t^{−s}[g(t) − H(t−C)S(t)] dt + ∫_C^∞ t^{−s}S(t) dt},
//!
//! where the first integral ([`z_integral`]) is entire in the strip bounded
//! by the remainder decay, and the second is known in closed form term by
//! term ([`h_terms`]): powers give C^{−s+p+1}/(s−p−1), logarithmic terms
//! t^{−n−1}(λ + σ ln t^{1/2})^{−k} reduce to generalized exponential
//! integrals E_k.
//!
//! Branches: the E_k reductions are continued from real positive s along
//! arcs of constant |s + n|, so the branch cuts of ζ at the branch points
//! s = −n run along the negative real axis (−∞, −n].

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{gauss_kronrod, tanh_sinh};
use crate::slcore::CharFn;
use crate::specfun::{expint_e_scaled, gamma_real};

/// Radius within which s counts as sitting on a pole or branch point.
pub const PROXIMITY_RADIUS: f64 = 1e-6;

/// Asymptotic sequence shape of one subtracted term, as a function of t.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TermShape {
    /// t^{exponent}, exponent < −1/2.
    PurePower { exponent: f64 },
    /// t^{−n−1}(λ + σ ln t^{1/2})^{−k}, n = `power_n`, k = `log_k`,
    /// λ = `lambda_shift`, σ = `sin_beta`.
    LogReciprocalPower { power_n: u32, log_k: u32, lambda_shift: Complex64, sin_beta: f64 },
}

impl TermShape {
    /// Value of the shape at t > 0.
    pub fn eval(&self, t: f64) -> Complex64 {
        match *self {
            TermShape::PurePower { exponent } => Complex64::new(t.powf(exponent), 0.0),
            TermShape::LogReciprocalPower { power_n, log_k, lambda_shift, sin_beta } => {
                let base = lambda_shift + 0.5 * sin_beta * t.ln();
                base.powi(-(log_k as i32)) * t.powi(-(power_n as i32) - 1)
            }
        }
    }

    /// Location on the real s axis where ∫_C^∞ t^{−s}·shape dt becomes
    /// singular, and whether it is a pole or a branch point.
    fn singularity(&self) -> (f64, SingularityKind) {
        match *self {
            TermShape::PurePower { exponent } => (exponent + 1.0, SingularityKind::Pole),
            TermShape::LogReciprocalPower { power_n, sin_beta, .. } => {
                let kind = if sin_beta == 0.0 { SingularityKind::Pole } else { SingularityKind::BranchPoint };
                (-(power_n as f64), kind)
            }
        }
    }
}

/// Large-t expansion of the reduced logarithmic derivative along a ray.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticExpansion {
    /// Weyl constant c of the leading −(i/2)c z^{−1/2} term.
    pub leading_c: f64,
    /// Ray angle Ψ the t-space coefficients refer to.
    pub psi: f64,
    /// Subtracted terms beyond the leading one (coefficients in t-space).
    pub terms: Vec<(Complex64, TermShape)>,
    /// Order N of the expansion.
    pub n: usize,
    /// Singular abscissae s₀ = 1/2 > s₁ > … of the subtracted terms.
    pub s_thresholds: Vec<f64>,
    /// The remainder is O(t^{−remainder_exponent}) up to logarithms.
    pub remainder_exponent: f64,
}

impl AsymptoticExpansion {
    /// Builds an expansion and derives its thresholds.
    pub fn new(leading_c: f64, psi: f64, terms: Vec<(Complex64, TermShape)>, n: usize, remainder_exponent: f64) -> Result<Self> {
        if !(leading_c > 0.0) {
            return Err(Error::InvalidInput(format!("Weyl constant {leading_c} must be positive")));
        }
        let mut th = vec![0.5];
        for (_, shape) in &terms {
            if let TermShape::PurePower { exponent } = shape {
                if *exponent >= -0.5 {
                    return Err(Error::InvalidInput(format!("power exponent {exponent} must be < −1/2")));
                }
            }
            let (loc, _) = shape.singularity();
            th.push(loc);
        }
        th.sort_by(|a, b| b.total_cmp(a));
        th.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        Ok(AsymptoticExpansion { leading_c, psi, terms, n, s_thresholds: th, remainder_exponent })
    }

    /// Lower edge of the strip in which the subtracted integral converges.
    pub fn strip_lower(&self) -> f64 {
        1.0 - self.remainder_exponent
    }

    /// The subtracted function S(t) including the leading and m0 terms.
    pub fn subtracted(&self, t: f64, m0: usize) -> Complex64 {
        let i = Complex64::i();
        let mut s = -0.5 * i * self.leading_c * Complex64::from_polar(1.0, 0.5 * self.psi) / t.sqrt();
        s -= m0 as f64 / t;
        for (c, shape) in &self.terms {
            s += c * shape.eval(t);
        }
        s
    }

    /// All singular points, with their kinds.
    pub fn singular_points(&self) -> Vec<(f64, SingularityKind)> {
        let mut v = vec![(0.5, SingularityKind::Pole)];
        for (_, shape) in &self.terms {
            let (loc, kind) = shape.singularity();
            // poles at nonpositive integers are cancelled by sin(πs)
            if kind == SingularityKind::Pole && is_integer(loc) {
                continue;
            }
            if !v.iter().any(|(l, k)| (l - loc).abs() < 1e-12 && *k == kind) {
                v.push((loc, kind));
            }
        }
        v
    }
}

/// Kind of a singular point of the continued ζ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularityKind {
    /// Simple pole.
    Pole,
    /// Logarithmic branch point.
    BranchPoint,
}

/// A singular point near the evaluation abscissa.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Singularity {
    /// Location on the real axis.
    pub location: f64,
    /// Pole or branch point.
    pub kind: SingularityKind,
    /// |s − location|.
    pub distance: f64,
}

/// Validity metadata of a ζ value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    /// Lower edge of the strip of validity.
    pub strip_lo: f64,
    /// Upper edge of the strip of validity.
    pub strip_hi: f64,
    /// Nearest pole or branch point.
    pub nearest: Option<Singularity>,
}

/// A ζ value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaResult {
    /// ζ(s).
    pub value: Complex64,
    /// Estimated absolute error.
    pub abs_error_estimate: f64,
    /// Strip and nearest singularity.
    pub region: Region,
}

/// Ray angle, split point and tolerances of a continuation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuationPlan {
    /// Ray angle Ψ ∈ (π/2, π).
    pub psi: f64,
    /// Heaviside split point C > 0.
    pub c_split: f64,
    /// Absolute quadrature tolerance.
    pub abs_tol: f64,
    /// Relative quadrature tolerance.
    pub rel_tol: f64,
    /// Zero-eigenvalue multiplicity m0.
    pub m0: usize,
}

impl ContinuationPlan {
    /// Validated plan with default tolerances (1e−12 absolute, 1e−11 relative).
    pub fn new(psi: f64, c_split: f64, m0: usize) -> Result<Self> {
        if !(psi > PI / 2.0 && psi < PI) {
            return Err(Error::ParameterOutOfRange(format!("Ψ = {psi} must lie in (π/2, π)")));
        }
        if !(c_split > 0.0 && c_split.is_finite()) {
            return Err(Error::ParameterOutOfRange(format!("split point C = {c_split} must be positive")));
        }
        Ok(ContinuationPlan { psi, c_split, abs_tol: 1e-12, rel_tol: 1e-11, m0 })
    }

    /// Overrides the quadrature tolerances.
    pub fn with_tolerances(mut self, abs_tol: f64, rel_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self.rel_tol = rel_tol;
        self
    }
}

fn is_integer(x: f64) -> bool {
    (x - x.round()).abs() < 1e-12
}

/// P(s) = e^{is(π−Ψ)} sin(πs)/π.
pub fn prefactor(s: Complex64, psi: f64) -> Complex64 {
    (Complex64::i() * s * (PI - psi)).exp() * (PI * s).sin() / PI
}

/// P(s)/(s − s₀), with the removable singularity at integer s₀ resolved.
fn prefactor_over(s: Complex64, s0: f64, psi: f64) -> Result<Complex64> {
    let d = s - s0;
    let phase = (Complex64::i() * s * (PI - psi)).exp() / PI;
    if is_integer(s0) {
        // sin(πs) = (−1)^{s0} sin(πd)
        let sign = if (s0.round() as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let pd = PI * d;
        let sinc = if d.norm() < 1e-4 {
            PI * (1.0 - pd * pd / 6.0 + pd * pd * pd * pd / 120.0)
        } else {
            pd.sin() / d
        };
        return Ok(phase * sign * sinc);
    }
    if d.norm() < PROXIMITY_RADIUS {
        return Err(Error::PoleProximity { pole: s0, distance: d.norm() });
    }
    Ok(phase * (PI * s).sin() / d)
}

/// e^{ζ}E_k(ζ) continued from arg ζ₀ along the arc ζ₀ → ζ₀e^{iφ} with
/// φ = `rotation` (one wrap across the negative axis adds the monodromy).
fn expint_scaled_continued(k: u32, zeta0_arg: f64, rotation: f64, z: Complex64) -> Result<Complex64> {
    let principal = expint_e_scaled(k, z)?;
    let target = zeta0_arg + rotation;
    let m = ((target - z.arg()) / (2.0 * PI)).round();
    if m == 0.0 {
        return Ok(principal);
    }
    // E_k(ze^{2πim}) = E_k(z) − 2πim(−z)^{k−1}/(k−1)!
    let fact = gamma_real(k as f64)?;
    let mono = Complex64::new(0.0, 2.0 * PI * m) * (-z).powu(k - 1) / fact;
    Ok(principal - z.exp() * mono)
}

/// ∫_C^∞ t^{−s}·shape(t) dt in closed form, multiplied by P(s).
fn shape_h(plan: &ContinuationPlan, shape: &TermShape, s: Complex64) -> Result<Complex64> {
    let c = plan.c_split;
    match *shape {
        TermShape::PurePower { exponent } => {
            let s0 = exponent + 1.0;
            Ok(prefactor_over(s, s0, plan.psi)? * Complex64::new(c, 0.0).powc(-s + s0))
        }
        TermShape::LogReciprocalPower { power_n, log_k, lambda_shift, sin_beta } => {
            let n = power_n as f64;
            let cpow = Complex64::new(c, 0.0).powc(-s - n);
            if sin_beta == 0.0 {
                return Ok(prefactor_over(s, -n, plan.psi)? * cpow * lambda_shift.powi(-(log_k as i32)));
            }
            let b = s + n;
            if b.norm() < PROXIMITY_RADIUS {
                return Err(Error::BranchPointProximity { point: -n, distance: b.norm() });
            }
            let lam_c = lambda_shift + 0.5 * sin_beta * c.ln();
            let w = 2.0 * lam_c / sin_beta;
            let a = b * w;
            let ek = expint_scaled_continued(log_k, w.arg(), b.arg(), a)?;
            Ok(prefactor(s, plan.psi) * cpow * 2.0 * lam_c.powi(1 - log_k as i32) / sin_beta * ek)
        }
    }
}

fn check_singularities(asym: &AsymptoticExpansion, s: Complex64) -> Result<Option<Singularity>> {
    let mut nearest: Option<Singularity> = None;
    for (loc, kind) in asym.singular_points() {
        let d = (s - loc).norm();
        if d < PROXIMITY_RADIUS {
            return Err(match kind {
                SingularityKind::Pole => Error::PoleProximity { pole: loc, distance: d },
                SingularityKind::BranchPoint => Error::BranchPointProximity { point: loc, distance: d },
            });
        }
        if nearest.map_or(true, |n| d < n.distance) {
            nearest = Some(Singularity { location: loc, kind, distance: d });
        }
    }
    Ok(nearest)
}

/// Σⱼ ℋⱼ(s): closed-form integrals over (C, ∞) of all subtracted terms,
/// including ℋ_{−1} (leading z^{−1/2} term) and ℋ₀ (the −m0/t term).
pub fn h_terms(plan: &ContinuationPlan, asym: &AsymptoticExpansion, s: Complex64) -> Result<Complex64> {
    check_singularities(asym, s)?;
    let i = Complex64::i();
    let lead = -0.5 * i * asym.leading_c * Complex64::from_polar(1.0, 0.5 * plan.psi);
    let mut total = lead * shape_h(plan, &TermShape::PurePower { exponent: -0.5 }, s)?;
    if plan.m0 > 0 {
        total -= plan.m0 as f64 * shape_h(plan, &TermShape::PurePower { exponent: -1.0 }, s)?;
    }
    for (c, shape) in &asym.terms {
        total += c * shape_h(plan, shape, s)?;
    }
    Ok(total)
}

/// Value and error estimate of a quadrature-based piece.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralResult {
    /// Value (already multiplied by P(s)).
    pub value: Complex64,
    /// Estimated absolute error.
    pub error: f64,
}

struct NearIntegral {
    value: Complex64,
    error: f64,
    g0: f64,
}

/// g(t) = e^{iΨ}[F′/F − m0/z] at z = te^{iΨ}.
fn reduced_ray_logderiv(cf: &CharFn, psi: f64, m0: usize, t: f64) -> Result<Complex64> {
    let e = Complex64::from_polar(1.0, psi);
    let z = e * t;
    let l = if m0 == cf.m0() {
        cf.log_derivative_reduced(z)?
    } else {
        cf.log_derivative(z)? - m0 as f64 / z
    };
    Ok(e * l)
}

/// Relative accuracy assumed for numerically differentiated g(t); the
/// subtracted integrand is considered resolved once it drops below this
/// fraction of |S(t)|.
const LOGDERIV_NOISE: f64 = 1e-10;

/// Relative accuracy of the Richardson-differentiated g(t) (fourth-order
/// truncation at step 10⁻³|z| plus rounding), used to bound the error it
/// contributes to the integrals.
const LOGDERIV_REL_ERR: f64 = 1e-11;

/// LOGDERIV_REL_ERR · ∫ t^{−σ}|g(t)| dt over [0, T], with |g| bounded by
/// its leading Weyl part (c/2)t^{−1/2} on [C, T] and by
/// max(|g₀|, (c/2)C^{−1/2}) on [0, C].
fn derivative_noise(c_weyl: f64, g0: f64, c_split: f64, t_end: f64, sigma: f64) -> f64 {
    let near = g0.max(0.5 * c_weyl / c_split.sqrt()) * c_split.powf(1.0 - sigma) / (1.0 - sigma);
    let e = 0.5 - sigma;
    let far = if e.abs() < 1e-9 {
        (t_end / c_split).ln()
    } else {
        (t_end.powf(e) - c_split.powf(e)) / e
    };
    LOGDERIV_REL_ERR * (near + 0.5 * c_weyl * far)
}

/// Integral of t^{−s} f(t) over [lo, hi] in the variable u = ln t.
fn log_gk<F: Fn(f64) -> Result<Complex64>>(f: F, s: Complex64, lo: f64, hi: f64, plan: &ContinuationPlan) -> Result<IntegralResult> {
    let (ulo, uhi) = (lo.ln(), hi.ln());
    let panels = ((uhi - ulo) * 2.0).ceil().max(1.0) as usize;
    let err_cell = std::cell::RefCell::new(None);
    let r = gauss_kronrod(
        |u| {
            let t = u.exp();
            match f(t) {
                Ok(v) => v * (Complex64::new(1.0, 0.0) - s).scale(u).exp(),
                Err(e) => {
                    err_cell.borrow_mut().get_or_insert(e);
                    Complex64::new(0.0, 0.0)
                }
            }
        },
        ulo,
        uhi,
        panels,
        plan.abs_tol,
        plan.rel_tol,
        4000,
    );
    if let Some(e) = err_cell.into_inner() {
        return Err(e);
    }
    let r = r?;
    Ok(IntegralResult { value: r.value, error: r.error })
}

/// t^{−s} = e^{−s ln t}.
fn tpow(t: f64, s: Complex64) -> Complex64 {
    (-s * t.ln()).exp()
}

/// ∫₀^C t^{−s} g(t) dt by tanh–sinh.
///
/// The constant g₀ = g(0) (or g at a tiny t when F has no attached series)
/// is integrated exactly, g₀C^{1−s}/(1−s), so the quadrature only sees the
/// milder t^{1−s} behaviour of t^{−s}[g(t) − g₀].
fn near_integral(plan: &ContinuationPlan, cf: &CharFn, s: Complex64) -> Result<NearIntegral> {
    let t0 = if cf.small_z().is_some() && plan.m0 == cf.m0() { 0.0 } else { 1e-12 * plan.c_split };
    let g0 = if t0 == 0.0 {
        Complex64::from_polar(1.0, plan.psi) * cf.log_derivative_reduced(Complex64::new(0.0, 0.0))?
    } else {
        reduced_ray_logderiv(cf, plan.psi, plan.m0, t0)?
    };
    let exact = g0 * Complex64::new(plan.c_split, 0.0).powc(1.0 - s) / (1.0 - s);
    let err_cell = std::cell::RefCell::new(None);
    let r = tanh_sinh(
        |_, da, _| match reduced_ray_logderiv(cf, plan.psi, plan.m0, da) {
            Ok(g) => tpow(da, s) * (g - g0),
            Err(e) => {
                err_cell.borrow_mut().get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        },
        0.0,
        plan.c_split,
        plan.abs_tol,
        plan.rel_tol,
    );
    if let Some(e) = err_cell.into_inner() {
        return Err(e);
    }
    let r = r?;
    Ok(NearIntegral { value: r.value + exact, error: r.error, g0: g0.norm() })
}

/// Largest upper cutoff scanned, as a multiple of C.
const T_MAX_FACTOR: f64 = 1e12;

/// 𝒵(s) = P(s)∫₀^∞ t^{−s}[g(t) − H(t−C)S(t)] dt.
///
/// The far integral stops at the first scan point T = C·10^{j/4} where the
/// subtracted integrand falls below the derivative noise floor; the power
/// law remainder beyond T is added to the error estimate.  If the scan
/// reaches 10¹²C while the integrand still decays too slowly for
/// convergence, [`Error::SlowDecay`] is raised.
pub fn z_integral(plan: &ContinuationPlan, cf: &CharFn, asym: &AsymptoticExpansion, s: Complex64) -> Result<IntegralResult> {
    check_strip(asym, s)?;
    if (asym.psi - plan.psi).abs() > 1e-14 {
        return Err(Error::InvalidInput("expansion and plan use different ray angles".into()));
    }
    let near = near_integral(plan, cf, s)?;
    let diff = |t: f64| -> Result<Complex64> {
        Ok(reduced_ray_logderiv(cf, plan.psi, plan.m0, t)? - asym.subtracted(t, plan.m0))
    };
    // scan for the cutoff
    let c = plan.c_split;
    let mut t_end = c * T_MAX_FACTOR;
    let mut last: Option<(f64, f64)> = None;
    let mut slow_count = 0;
    let mut resolved = false;
    let mut d_end = 0.0;
    for j in 1..=48 {
        let t = c * 10f64.powf(j as f64 / 4.0);
        let d = diff(t)?.norm();
        let floor = LOGDERIV_NOISE * asym.subtracted(t, plan.m0).norm();
        if let Some((tp, dp)) = last {
            let rate = -(d / dp).ln() / (t / tp).ln();
            if d > 100.0 * floor && rate < 1.0 - s.re {
                slow_count += 1;
            } else {
                slow_count = 0;
            }
        }
        last = Some((t, d));
        d_end = d;
        if d <= floor {
            t_end = t;
            resolved = true;
            break;
        }
    }
    if !resolved && slow_count >= 4 {
        return Err(Error::SlowDecay(format!(
            "subtracted integrand still decays slower than t^{{{}}} at t = {t_end:e}",
            s.re - 1.0
        )));
    }
    let far = log_gk(diff, s, c, t_end, plan)?;
    // remainder ∫_T^∞ ~ d(T) T^{1−Re s}/(Re s + r − 1)
    let denom = (s.re + asym.remainder_exponent - 1.0).max(1e-3);
    let tail = d_end * t_end.powf(1.0 - s.re) / denom;
    let noise = derivative_noise(asym.leading_c, near.g0, c, t_end, s.re);
    let p = prefactor(s, plan.psi);
    Ok(IntegralResult {
        value: p * (near.value + far.value),
        error: p.norm() * (near.error + far.error + tail + noise),
    })
}

fn check_strip(asym: &AsymptoticExpansion, s: Complex64) -> Result<()> {
    let lo = asym.strip_lower();
    if !(s.re > lo && s.re < 1.0) {
        return Err(Error::OutsideStrip { s: format!("{s}"), lo, hi: 1.0 });
    }
    Ok(())
}

/// ζ(s) = 𝒵(s) + Σⱼℋⱼ(s) with region metadata.
pub fn assemble_zeta(plan: &ContinuationPlan, cf: &CharFn, asym: &AsymptoticExpansion, s: Complex64) -> Result<ZetaResult> {
    check_strip(asym, s)?;
    let nearest = check_singularities(asym, s)?;
    let z = z_integral(plan, cf, asym, s)?;
    let h = h_terms(plan, asym, s)?;
    let value = z.value + h;
    let rounding = 1e-14 * (z.value.norm() + h.norm());
    Ok(ZetaResult {
        value,
        abs_error_estimate: z.error + rounding,
        region: Region { strip_lo: asym.strip_lower(), strip_hi: 1.0, nearest },
    })
}

/// ζ(s) from the primitive representation valid for 1/2 < Re s < 1:
/// P(s)∫₀^∞ t^{−s} g(t) dt without any asymptotic subtraction.
///
/// The integral runs to T = 10¹²·C; beyond T only the leading Weyl term
/// and the −m0/t term are integrated analytically.  This is an independent
/// code path used to validate [`assemble_zeta`].
pub fn zeta_unsubtracted(plan: &ContinuationPlan, cf: &CharFn, weyl_c: f64, s: Complex64) -> Result<ZetaResult> {
    if !(s.re > 0.5 && s.re < 1.0) {
        return Err(Error::OutsideStrip { s: format!("{s}"), lo: 0.5, hi: 1.0 });
    }
    let near = near_integral(plan, cf, s)?;
    let t_end = plan.c_split * T_MAX_FACTOR;
    let g = |t: f64| reduced_ray_logderiv(cf, plan.psi, plan.m0, t);
    let far = log_gk(g, s, plan.c_split, t_end, plan)?;
    let i = Complex64::i();
    let lead = -0.5 * i * weyl_c * Complex64::from_polar(1.0, 0.5 * plan.psi);
    // ∫_T^∞ t^{−s}[lead t^{−1/2} − m0/t] dt
    let tail = lead * Complex64::new(t_end, 0.0).powc(0.5 - s) / (s - 0.5)
        - plan.m0 as f64 * Complex64::new(t_end, 0.0).powc(-s) / s;
    // the next correction is O(t^{−1}/ln t) for the slowest models
    let tail_err = Complex64::new(t_end, 0.0).powc(-s).norm() / s.norm();
    let noise = derivative_noise(weyl_c, near.g0, plan.c_split, t_end, s.re);
    let p = prefactor(s, plan.psi);
    Ok(ZetaResult {
        value: p * (near.value + far.value + tail),
        abs_error_estimate: p.norm() * (near.error + far.error + tail_err + noise),
        region: Region {
            strip_lo: 0.5,
            strip_hi: 1.0,
            nearest: Some(Singularity { location: 0.5, kind: SingularityKind::Pole, distance: (s - 0.5).norm() }),
        },
    })
}

/// Regularized determinant exp(−ζ_reg′(0)) with ζ_reg(s) = ζ(s) + s ln s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetReg {
    /// exp(−ζ_reg′(0)).
    pub value: Complex64,
    /// ln det = −ζ_reg′(0).
    pub ln_det: Complex64,
    /// |D(h/2) − D(h)| of the symmetric difference quotients.
    pub step_change: f64,
}

/// Regularized determinant from any ζ evaluator near s = 0.
///
/// ζ_reg′(0) is extrapolated from the symmetric quotients
/// D(h) = [ζ_reg(h) − ζ_reg(−h)]/(2h) at h = 10⁻⁴, h/2, h/4.  Because
/// ζ_reg still contains s² ln s (the continuation to −h crosses the
/// branch point), D(h) = ζ_reg′(0) + a·h + b·h² + …, so the linear term is
/// eliminated first, then the quadratic one.  If halving h changes the
/// once-extrapolated value by more than 10⁻⁴,
/// [`Error::NonConvergentExtrapolation`] is returned.
pub fn det_reg_from<F>(zeta: F) -> Result<DetReg>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let zreg = |s: f64| -> Result<Complex64> {
        let sc = Complex64::new(s, 0.0);
        Ok(zeta(sc)? + sc * sc.ln())
    };
    let h = 1e-4;
    let d = |h: f64| -> Result<Complex64> { Ok((zreg(h)? - zreg(-h)?) / (2.0 * h)) };
    let d1 = d(h)?;
    let d2 = d(0.5 * h)?;
    let d4 = d(0.25 * h)?;
    let r1 = 2.0 * d2 - d1;
    let r2 = 2.0 * d4 - d2;
    let change = (r2 - r1).norm();
    if change > 1e-4 {
        return Err(Error::NonConvergentExtrapolation(format!("ln det changed by {change:e} on halving h")));
    }
    let deriv = (4.0 * r2 - r1) / 3.0;
    Ok(DetReg { value: (-deriv).exp(), ln_det: -deriv, step_change: change })
}

/// Regularized determinant of a characteristic function with attached
/// asymptotics.
pub fn det_reg(plan: &ContinuationPlan, cf: &CharFn, asym: &AsymptoticExpansion) -> Result<DetReg> {
    det_reg_from(|s| Ok(assemble_zeta(plan, cf, asym, s)?.value))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn h_terms_trivial_cases() {
        let plan = ContinuationPlan::new(0.75 * PI, 1.0, 0).unwrap();
        let asym = AsymptoticExpansion::new(1.0, plan.psi, vec![], 0, 1.0).unwrap();
        // sin(π) = 0 kills ℋ_{−1} at s = 1
        assert!(h_terms(&plan, &asym, c(1.0, 0.0)).unwrap().norm() < 1e-15);
        // power −3/2 at C = 1: P(s)/(s + 1/2)
        let s = c(0.3, 0.2);
        let v = shape_h(&plan, &TermShape::PurePower { exponent: -1.5 }, s).unwrap();
        assert!((v - prefactor(s, plan.psi) / (s + 0.5)).norm() < 1e-15);
    }

    /// The log-shape closed form against direct quadrature of
    /// ∫_C^∞ t^{−s−n−1}(λ + σ ln t^{1/2})^{−k} dt in u = ln t.
    #[test]
    fn log_shape_against_quadrature() {
        let lam = c(0.577, -0.39);
        for &(n, k, cs, s) in &[(0u32, 1u32, 1.0, c(0.4, 0.0)), (1, 2, 2.0, c(-0.3, 0.5)), (2, 1, 0.5, c(0.1, -0.4)), (0, 3, 1.0, c(0.2, -1.2))] {
            let plan = ContinuationPlan::new(0.75 * PI, cs, 0).unwrap();
            let shape = TermShape::LogReciprocalPower { power_n: n, log_k: k, lambda_shift: lam, sin_beta: 1.0 };
            let closed = shape_h(&plan, &shape, s).unwrap() / prefactor(s, plan.psi);
            let q = gauss_kronrod(
                |u| {
                    let t: f64 = cs * u.exp();
                    tpow(t, s) * shape.eval(t) * t
                },
                0.0,
                200.0,
                40,
                1e-14,
                1e-13,
                4000,
            )
            .unwrap();
            assert!((closed - q.value).norm() < 1e-10 * q.value.norm(), "n={n} k={k}: {closed} vs {}", q.value);
        }
    }

    #[test]
    fn plan_and_strip_validation() {
        assert!(ContinuationPlan::new(0.4 * PI, 1.0, 0).is_err());
        let plan = ContinuationPlan::new(0.75 * PI, 1.0, 0).unwrap();
        let asym = AsymptoticExpansion::new(1.0, plan.psi, vec![(c(1.0, 0.0), TermShape::PurePower { exponent: -1.5 })], 1, 2.0).unwrap();
        assert_eq!(asym.s_thresholds, vec![0.5, -0.5]);
        assert!(matches!(check_strip(&asym, c(-1.5, 0.0)), Err(Error::OutsideStrip { .. })));
        assert!(matches!(h_terms(&plan, &asym, c(0.5, 1e-8)), Err(Error::PoleProximity { .. })));
    }
}
