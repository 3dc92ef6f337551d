//! Eigenvalue enumeration by real root finding on the characteristic
//! function, zero-eigenvalue multiplicity, and direct ζ(s) summation with
//! a Weyl-law tail.
//!
//! On the real axis the supplied characteristic functions are real up to a
//! constant phase (e^{iφ} for coupled conditions); the phase is removed
//! from a reference sample before sign tests.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::continuation::{Region, Singularity, SingularityKind, ZetaResult};
use crate::error::{Error, Result};
use crate::slcore::{leading_index_tol, CharFn, Scaled, SpectralConstants};

/// One distinct eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenvalue {
    /// λ.
    pub lambda: f64,
    /// Multiplicity (1 or 2).
    pub multiplicity: u32,
}

/// Ordered nonzero eigenvalues with multiplicities; the zero eigenvalue is
/// recorded separately in `zero_multiplicity`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable {
    /// Strictly increasing nonzero eigenvalues.
    pub eigenvalues: Vec<Eigenvalue>,
    /// Lower end of the search.
    pub lower_bound: f64,
    /// Number of nonzero eigenvalues requested.
    pub count_requested: usize,
    /// Multiplicity m0 of the eigenvalue 0.
    pub zero_multiplicity: usize,
}

impl SpectrumTable {
    /// Table from explicit eigenvalues (sorted, nonzero).
    pub fn from_eigenvalues(eigenvalues: Vec<Eigenvalue>, zero_multiplicity: usize) -> Self {
        let n = eigenvalues.len();
        let lower = eigenvalues.first().map_or(0.0, |e| e.lambda.min(0.0));
        SpectrumTable { eigenvalues, lower_bound: lower, count_requested: n, zero_multiplicity }
    }

    /// Total number of eigenvalues including multiplicities and zero.
    pub fn total_count(&self) -> usize {
        self.zero_multiplicity + self.eigenvalues.iter().map(|e| e.multiplicity as usize).sum::<usize>()
    }
}

/// Real value of F up to a fixed phase, stored as (sign, ln|f|).
#[derive(Debug, Clone, Copy)]
struct RealSample {
    sign: f64,
    ln_abs: f64,
}

impl RealSample {
    fn is_zero(&self) -> bool {
        self.sign == 0.0
    }
}

/// Evaluates F at real x and projects onto the reference phase.
struct RealView<'a> {
    cf: &'a CharFn,
    phase: Complex64,
}

impl<'a> RealView<'a> {
    fn sample(&self, x: f64) -> Result<RealSample> {
        let v: Scaled = self.cf.eval_scaled(Complex64::new(x, 0.0))?;
        let m = v.mantissa * self.phase.conj();
        if !(m.re.is_finite() && m.im.is_finite()) {
            return Err(Error::NonRealEvaluation(format!("{x} (non-finite value)")));
        }
        if m.im.abs() > 1e-6 * m.norm().max(1e-300) && m.im.abs() > 1e-8 * (-v.log_scale).exp() {
            return Err(Error::NonRealEvaluation(format!("{x}")));
        }
        if m.re == 0.0 {
            return Ok(RealSample { sign: 0.0, ln_abs: f64::NEG_INFINITY });
        }
        Ok(RealSample { sign: m.re.signum(), ln_abs: m.re.abs().ln() + v.log_scale })
    }
}

/// Determines the constant phase of F on the real axis from a few samples.
fn reference_phase(cf: &CharFn, xs: &[f64]) -> Result<Complex64> {
    let mut best: Option<(f64, Complex64)> = None;
    for &x in xs {
        let v = cf.eval_scaled(Complex64::new(x, 0.0))?;
        let mag = v.mantissa.norm();
        if mag > 0.0 && mag.is_finite() {
            let lm = mag.ln() + v.log_scale;
            if best.map_or(true, |(b, _)| lm > b) {
                best = Some((lm, v.mantissa / mag));
            }
        }
    }
    let ph = best.map(|b| b.1).ok_or_else(|| Error::NonRealEvaluation("F vanishes on all probes".into()))?;
    // a real function has phase ±1; fold to the right half plane
    Ok(if ph.re < 0.0 { -ph } else { ph })
}

/// Bisection to relative width 1e−8, then secant polish to 1e−12 within
/// the bracket.
fn polish_root(view: &RealView, mut a: f64, mut b: f64, mut fa: RealSample, fb: RealSample) -> Result<f64> {
    let _ = fb;
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if (b - a) <= 1e-8 * m.abs().max(1.0) {
            break;
        }
        let fm = view.sample(m)?;
        if fm.is_zero() {
            return Ok(m);
        }
        if fm.sign == fa.sign {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    // secant iterations with values relative to a common scale
    let mut x0 = a;
    let mut x1 = b;
    let mut f0 = view.sample(x0)?;
    let mut f1 = view.sample(x1)?;
    for _ in 0..60 {
        if f1.is_zero() {
            return Ok(x1);
        }
        if f0.is_zero() {
            return Ok(x0);
        }
        // ratio r = f0/f1
        let r = f0.sign * f1.sign * (f0.ln_abs - f1.ln_abs).exp();
        let denom = r - 1.0;
        if denom == 0.0 || !denom.is_finite() {
            break;
        }
        // x2 = x1 − f1(x1 − x0)/(f1 − f0) = x1 + (x1 − x0)/(r − 1)
        let mut x2 = x1 + (x1 - x0) / denom;
        if !(x2 > a && x2 < b) {
            x2 = 0.5 * (a + b);
        }
        let step = (x2 - x1).abs();
        let f2 = view.sample(x2)?;
        if f2.sign == fa.sign {
            a = x2;
        } else if !f2.is_zero() {
            b = x2;
        }
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
        if step <= 1e-13 * x1.abs().max(1e-300) || (b - a) <= 1e-12 * x1.abs().max(1e-300) {
            break;
        }
    }
    Ok(x1)
}

/// Golden-section minimization of |f| on [a, b]; returns the minimizer, or
/// an interior point with the opposite sign if one is met.
fn minimize_abs(view: &RealView, a: f64, b: f64, sign: f64) -> Result<(f64, RealSample)> {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let mut f1 = view.sample(x1)?;
    let mut f2 = view.sample(x2)?;
    for _ in 0..120 {
        for (x, f) in [(x1, f1), (x2, f2)] {
            if f.sign != sign {
                return Ok((x, f));
            }
        }
        if hi - lo <= 1e-15 * lo.abs().max(hi.abs()).max(1e-300) {
            break;
        }
        if f1.ln_abs < f2.ln_abs {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = view.sample(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = view.sample(x2)?;
        }
    }
    Ok(if f1.ln_abs < f2.ln_abs { (x1, f1) } else { (x2, f2) })
}

/// Threshold below which |λ| counts as the zero eigenvalue.
const ZERO_TOL: f64 = 1e-9;

/// Finds real roots of F on a grid, returning (λ, multiplicity) pairs.
fn roots_on_grid(view: &RealView, grid: &[f64]) -> Result<Vec<Eigenvalue>> {
    let samples: Vec<Result<RealSample>> = grid.par_iter().map(|&x| view.sample(x)).collect();
    let samples = samples.into_iter().collect::<Result<Vec<_>>>()?;
    let mut roots: Vec<Eigenvalue> = Vec::new();
    let n = grid.len();
    for i in 0..n {
        let fi = samples[i];
        if fi.is_zero() {
            roots.push(Eigenvalue { lambda: grid[i], multiplicity: 1 });
            continue;
        }
        if i + 1 < n {
            let fj = samples[i + 1];
            if !fj.is_zero() && fj.sign != fi.sign {
                let x = polish_root(view, grid[i], grid[i + 1], fi, fj)?;
                roots.push(Eigenvalue { lambda: x, multiplicity: 1 });
                continue;
            }
        }
        // same-sign local minimum of |f|: candidate double root or close pair
        if i > 0 && i + 1 < n {
            let (fl, fr) = (samples[i - 1], samples[i + 1]);
            if fl.sign == fi.sign && fr.sign == fi.sign && fi.ln_abs < fl.ln_abs && fi.ln_abs < fr.ln_abs {
                let (xm, fm) = minimize_abs(view, grid[i - 1], grid[i + 1], fi.sign)?;
                if fm.sign != fi.sign {
                    // two nearby simple roots
                    if !fm.is_zero() {
                        roots.push(Eigenvalue { lambda: polish_root(view, grid[i - 1], xm, fl, fm)?, multiplicity: 1 });
                        roots.push(Eigenvalue { lambda: polish_root(view, xm, grid[i + 1], fm, fr)?, multiplicity: 1 });
                    } else {
                        roots.push(Eigenvalue { lambda: xm, multiplicity: 2 });
                    }
                    continue;
                }
                let scale = fl.ln_abs.max(fr.ln_abs);
                if fm.ln_abs - scale <= (1e-8f64).ln() && is_double_root(view, xm, fm)? {
                    roots.push(Eigenvalue { lambda: xm, multiplicity: 2 });
                }
            }
        }
    }
    roots.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
    roots.dedup_by(|a, b| (a.lambda - b.lambda).abs() <= 1e-10 * a.lambda.abs().max(1.0));
    Ok(roots)
}

/// Confirms a double root at x: |F′| small relative to the local scale and
/// F″ of one sign on both sides.
fn is_double_root(view: &RealView, x: f64, fx: RealSample) -> Result<bool> {
    let h = 1e-4 * x.abs().max(1.0);
    let fp = view.sample(x + h)?;
    let fm = view.sample(x - h)?;
    if fp.sign != fx.sign || fm.sign != fx.sign {
        return Ok(false);
    }
    // f(x ± h) ≈ f″h²/2 ≫ |f(x)|, and symmetric: |f′|h ≪ f″h²
    let base = fp.ln_abs.min(fm.ln_abs);
    let asym = ((fp.ln_abs - fm.ln_abs).abs()).min(1.0);
    Ok(fx.ln_abs < base + (1e-6f64).ln() && asym < 0.1)
}

/// First `count` nonzero eigenvalues ≥ `lower_bound`.
///
/// Grid: uniform in u = c√λ/π with step 1/8 (eight points per predicted
/// eigenvalue gap) on [0, λ_max], plus a uniform grid on [lower_bound, 0].
/// If fewer than `count` roots are found, the grid is refined and extended
/// up to three times before [`Error::BracketingFailure`].
pub fn find_eigenvalues(cf: &CharFn, sc: &SpectralConstants, count: usize, lower_bound: f64) -> Result<SpectrumTable> {
    let m0 = zero_multiplicity_hint(cf);
    let pi = std::f64::consts::PI;
    let mut u_max = count as f64 + 5.0;
    let mut step = 0.125;
    for attempt in 0..4 {
        let mut grid = Vec::new();
        if lower_bound < 0.0 {
            let nneg = (64.0 / (step / 0.125)) as usize;
            for i in 0..nneg {
                grid.push(lower_bound * (1.0 - i as f64 / nneg as f64));
            }
        }
        let nu = (u_max / step).ceil() as usize;
        for i in 0..=nu {
            let u = i as f64 * step;
            let lam = (pi * u / sc.c).powi(2);
            if lam >= lower_bound {
                grid.push(lam);
            }
        }
        grid.sort_by(|a, b| a.total_cmp(b));
        grid.dedup();
        let probe: Vec<f64> = grid.iter().step_by((grid.len() / 16).max(1)).copied().collect();
        let phase = reference_phase(cf, &probe)?;
        let view = RealView { cf, phase };
        let scale = grid.last().copied().unwrap_or(1.0).abs().max(1.0);
        let roots: Vec<Eigenvalue> = roots_on_grid(&view, &grid)?
            .into_iter()
            .filter(|e| !(m0 > 0 && e.lambda.abs() <= ZERO_TOL * scale.min(1e3)))
            .filter(|e| e.lambda.abs() > 1e-300 && e.lambda >= lower_bound)
            .collect();
        if roots.len() >= count {
            let mut eigenvalues = roots;
            eigenvalues.truncate(count);
            return Ok(SpectrumTable { eigenvalues, lower_bound, count_requested: count, zero_multiplicity: m0 });
        }
        if attempt < 3 {
            step *= 0.5;
            u_max *= 1.5;
        }
    }
    Err(Error::BracketingFailure(format!("fewer than {count} roots found after refinement")))
}

fn zero_multiplicity_hint(cf: &CharFn) -> usize {
    zero_multiplicity(cf).unwrap_or(cf.m0())
}

/// Order of the zero of F at z = 0.
///
/// With a series attached, the leading nonzero index (relative tolerance
/// 1e−9) is authoritative and cross-checked against the scaling of the
/// evaluator, log₂|F(2h)/F(h)| at h = 10⁻³; disagreement gives
/// [`Error::Inconclusive`].  Without a series the scaling test alone decides.
pub fn zero_multiplicity(cf: &CharFn) -> Result<usize> {
    let f0 = cf.eval_scaled(Complex64::new(0.0, 0.0))?;
    let ratio_order = || -> Result<f64> {
        let h = 1e-3;
        let a = cf.eval_scaled(Complex64::new(h, 0.0))?;
        let b = cf.eval_scaled(Complex64::new(2.0 * h, 0.0))?;
        if a.mantissa.norm() == 0.0 {
            return Err(Error::Inconclusive("F(h) vanishes".into()));
        }
        Ok(((b.mantissa / a.mantissa).norm().ln() + b.log_scale - a.log_scale) / std::f64::consts::LN_2)
    };
    if let Some(s) = cf.small_z() {
        let m = leading_index_tol(s).ok_or_else(|| Error::Inconclusive("series vanishes identically".into()))?;
        if m == 0 {
            return Ok(0);
        }
        let r = ratio_order()?;
        if (r - m as f64).abs() > 0.25 {
            return Err(Error::Inconclusive(format!("series order {m} but scaling test gives {r:.3}")));
        }
        return Ok(m);
    }
    let f1 = cf.eval_scaled(Complex64::new(1e-3, 0.0))?;
    if f0.mantissa.norm() > 1e-6 * f1.mantissa.norm() * (f1.log_scale - f0.log_scale).exp() {
        return Ok(0);
    }
    let r = ratio_order()?;
    let m = r.round();
    if (r - m).abs() > 0.1 || m < 0.0 {
        return Err(Error::Inconclusive(format!("scaling test gives non-integer order {r:.3}")));
    }
    Ok(m as usize)
}

/// λ^{−s} with arg λ = −π for negative λ.
fn lambda_pow(lambda: f64, s: Complex64) -> Complex64 {
    if lambda > 0.0 {
        (-s * lambda.ln()).exp()
    } else {
        (-s * Complex64::new(lambda.abs().ln(), -std::f64::consts::PI)).exp()
    }
}

/// Σ_{n>K} λ_n^{−s} for the shifted Weyl law λ_n = (π(n+δ)/c)²:
/// midpoint Euler–Maclaurin, (π/c)^{−2s}[X^{1−2s}/(2s−1) + (2s/24)X^{−2s−1}]
/// with X = K + 1/2 + δ.
fn weyl_tail(c: f64, k: f64, delta: f64, s: Complex64) -> Complex64 {
    let pi = std::f64::consts::PI;
    let x = Complex64::new(k + 0.5 + delta, 0.0);
    let a = Complex64::new(pi / c, 0.0).powc(-2.0 * s);
    a * (x.powc(1.0 - 2.0 * s) / (2.0 * s - 1.0) + (2.0 * s / 24.0) * x.powc(-2.0 * s - 1.0))
}

/// Direct ζ(s) = Σ λ^{−s} over the nonzero eigenvalues of the table plus a
/// Weyl tail.
///
/// The shift δ of the Weyl law is fitted at the last eigenvalue; the error
/// estimate is the change of the tail when δ is instead fitted at the
/// eigenvalue of index K/10, plus summation rounding.  Tables with fewer
/// than ten eigenvalues get no tail; its Weyl estimate becomes the error.
pub fn zeta_direct_sum(spec: &SpectrumTable, s: Complex64, sc: &SpectralConstants) -> Result<ZetaResult> {
    if !(s.re > 0.5) {
        return Err(Error::AbscissaViolation(s.re));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    for e in &spec.eigenvalues {
        // Kahan summation
        let y = lambda_pow(e.lambda, s) * e.multiplicity as f64 - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    // effective Weyl index of each eigenvalue (centre of its multiplicity)
    let mut idx = spec.zero_multiplicity as f64;
    let mut indexed = Vec::with_capacity(spec.eigenvalues.len());
    for e in &spec.eigenvalues {
        let center = idx + 0.5 * (e.multiplicity as f64 + 1.0);
        idx += e.multiplicity as f64;
        indexed.push((center, e.lambda));
    }
    let total = idx;
    let pi = std::f64::consts::PI;
    let (tail, tail_err) = match indexed.last() {
        Some(&(klast, lam)) if lam > 0.0 && indexed.len() >= 10 => {
            let delta_k = sc.c * lam.sqrt() / pi - klast;
            let j = indexed.len() / 10;
            let (kj, lj) = indexed[j.max(1) - 1];
            let delta_j = if lj > 0.0 { sc.c * lj.sqrt() / pi - kj } else { delta_k };
            let t1 = weyl_tail(sc.c, total, delta_k, s);
            let t2 = weyl_tail(sc.c, total, delta_j, s);
            (t1, (t1 - t2).norm())
        }
        Some(&(klast, lam)) if lam > 0.0 => {
            let delta_k = sc.c * lam.sqrt() / pi - klast;
            // too few eigenvalues to trust a fitted tail: report it as error
            let t1 = weyl_tail(sc.c, total, delta_k, s);
            (Complex64::new(0.0, 0.0), t1.norm())
        }
        _ => (Complex64::new(0.0, 0.0), 0.0),
    };
    let rounding = 1e-16 * (spec.eigenvalues.len() as f64).sqrt().max(1.0) * sum.norm();
    Ok(ZetaResult {
        value: sum + tail,
        abs_error_estimate: tail_err + rounding,
        region: Region {
            strip_lo: 0.5,
            strip_hi: f64::INFINITY,
            nearest: Some(Singularity { location: 0.5, kind: SingularityKind::Pole, distance: (s - 0.5).norm() }),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::PowerSeries;
    use std::sync::Arc;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn single_linear_root() {
        let f = CharFn::polynomial(PowerSeries::new(vec![c(1.0), c(-0.2)]));
        let sc = SpectralConstants::from_c(1.0);
        let t = find_eigenvalues(&f, &sc, 1, -1.0).unwrap();
        assert_eq!(t.eigenvalues.len(), 1);
        assert!((t.eigenvalues[0].lambda - 5.0).abs() < 1e-12);
        let z = zeta_direct_sum(&SpectrumTable::from_eigenvalues(vec![Eigenvalue { lambda: 5.0, multiplicity: 1 }], 0), c(2.0), &sc).unwrap();
        assert!((z.value - 0.04).norm() < 1e-12);
        assert!(matches!(zeta_direct_sum(&t, c(0.5), &sc), Err(Error::AbscissaViolation(_))));
    }

    #[test]
    fn double_root_detected() {
        // (z − 3)²(z − 7)(1 + z²)
        let f = CharFn::new(Arc::new(|z: Complex64| Ok(Scaled::unscaled((z - 3.0) * (z - 3.0) * (z - 7.0) * (1.0 + z * z)))), 0);
        let sc = SpectralConstants::from_c(1.0);
        let t = find_eigenvalues(&f, &sc, 2, -1.0).unwrap();
        assert_eq!(t.eigenvalues[0].multiplicity, 2, "{:?}", t.eigenvalues);
        assert!((t.eigenvalues[0].lambda - 3.0).abs() < 1e-6);
        assert!((t.eigenvalues[1].lambda - 7.0).abs() < 1e-12);
    }

    #[test]
    fn multiplicity_of_simple_polynomials() {
        assert_eq!(zero_multiplicity(&CharFn::polynomial(PowerSeries::new(vec![c(1.0), c(1.0)]))).unwrap(), 0);
        let f = CharFn::polynomial(PowerSeries::new(vec![c(0.0), c(0.0), c(2.0), c(1.0)]));
        assert_eq!(zero_multiplicity(&f).unwrap(), 2);
        let g = CharFn::new(Arc::new(|z: Complex64| Ok(Scaled::unscaled(z * (1.0 - z)))), 0);
        assert_eq!(zero_multiplicity(&g).unwrap(), 1);
    }
}
