//! Liouville transform of τ to Schrödinger form −d²/dξ² + V(ξ), and the
//! regularization of a quasi-regular problem by a principal-type function û.
//!
//! ξ(x) = ∫_k^x √(r/p) dt maps (a, b) onto (𝒜, ℬ) and
//!
//! V = −(1/16)(pr)^{−1}[(pr)′/r]² + (1/4)r^{−1}[(pr)′/r]′ + q/r,
//!
//! where all derivatives are taken in x and are obtained exactly from
//! [`Jet`] evaluation of the coefficients.

use std::sync::Arc;

use super::{integrate_sqrt_ratio, CoefFn, EndpointClass, Jet, SLProblem};
use crate::error::{Error, Result};

/// One grid point of the transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiouvilleSample {
    /// Original variable x.
    pub x: f64,
    /// Transformed variable ξ(x).
    pub xi: f64,
    /// Potential V(ξ(x)).
    pub v: f64,
}

/// Result of [`liouville_transform`].
#[derive(Debug, Clone)]
pub struct LiouvilleResult {
    /// Base point k with ξ(k) = 0.
    pub k: f64,
    /// 𝒜 = ξ(a).
    pub a_end: f64,
    /// ℬ = ξ(b).
    pub b_end: f64,
    /// Samples of ξ and V on the requested grid.
    pub samples: Vec<LiouvilleSample>,
    /// Regularized problem (P, Q, R) when a regularizing function was given.
    pub regularized: Option<SLProblem>,
    prob: SLProblem,
}

impl LiouvilleResult {
    /// ξ(x) = ∫_k^x √(r/p) dt.
    pub fn xi(&self, x: f64) -> Result<f64> {
        xi_of(&self.prob, self.k, x)
    }

    /// V at the point ξ(x).
    pub fn potential(&self, x: f64) -> Result<f64> {
        potential_at(&self.prob, x)
    }
}

fn xi_of(prob: &SLProblem, k: f64, x: f64) -> Result<f64> {
    if x >= k {
        integrate_sqrt_ratio(prob, k, x)
    } else {
        Ok(-integrate_sqrt_ratio(prob, x, k)?)
    }
}

/// Transformed potential at x (interior point).
pub fn potential_at(prob: &SLProblem, x: f64) -> Result<f64> {
    let j = Jet::var(x);
    let p = prob.p_at(j);
    let r = prob.r_at(j);
    let q = prob.q_at(j);
    let w = p * r;
    if !(w.v > 0.0) {
        return Err(Error::NonSmoothCoefficients(format!("pr({x}) = {} is not positive", w.v)));
    }
    // g = (pr)′/r and g′ = (w″r − w′r′)/r²
    let g = w.d1 / r.v;
    let g1 = (w.d2 * r.v - w.d1 * r.d1) / (r.v * r.v);
    let v = -g * g / (16.0 * w.v) + g1 / (4.0 * r.v) + q.v / r.v;
    if !v.is_finite() {
        return Err(Error::NonSmoothCoefficients(format!("V is not finite at x = {x}")));
    }
    Ok(v)
}

/// Liouville transform with base point k ∈ [a, b] sampled at `grid`
/// (interior x values).
pub fn liouville_transform(prob: &SLProblem, k: f64, grid: &[f64]) -> Result<LiouvilleResult> {
    liouville_transform_regularized(prob, k, grid, None)
}

/// [`liouville_transform`] that additionally regularizes the problem with
/// the function û when supplied.
pub fn liouville_transform_regularized(
    prob: &SLProblem,
    k: f64,
    grid: &[f64],
    u_hat: Option<CoefFn>,
) -> Result<LiouvilleResult> {
    let (a, b) = (prob.a(), prob.b());
    if !(a..=b).contains(&k) {
        return Err(Error::ParameterOutOfRange(format!("base point k = {k} outside [{a}, {b}]")));
    }
    let a_end = -integrate_sqrt_ratio(prob, a, k)?;
    let b_end = integrate_sqrt_ratio(prob, k, b)?;
    let mut samples = Vec::with_capacity(grid.len());
    for &x in grid {
        if !(x > a && x < b) {
            return Err(Error::ParameterOutOfRange(format!("grid point {x} is not interior")));
        }
        samples.push(LiouvilleSample { x, xi: xi_of(prob, k, x)?, v: potential_at(prob, x)? });
    }
    let regularized = u_hat.map(|u| regularize(prob, u)).transpose()?;
    Ok(LiouvilleResult { k, a_end, b_end, samples, regularized, prob: prob.clone() })
}

/// Regularized problem P = û²p, R = û²r, Q = û(−(pû′)′ + qû).
///
/// P and R carry exact jets; Q needs û‴ for its own derivatives, which a
/// second-order jet does not provide, so its derivatives are taken by
/// central differences of its value.
pub fn regularize(prob: &SLProblem, u_hat: CoefFn) -> Result<SLProblem> {
    let (p, q, r) = (prob.p.clone(), prob.q.clone(), prob.r.clone());
    let u1 = u_hat.clone();
    let big_p: CoefFn = Arc::new(move |x| {
        let u = u1(x);
        u * u * p(x)
    });
    let u2 = u_hat.clone();
    let big_r: CoefFn = Arc::new(move |x| {
        let u = u2(x);
        u * u * r(x)
    });
    let p2 = prob.p.clone();
    let q_value = move |x: f64| {
        let j = Jet::var(x);
        let u = u_hat(j);
        let pv = p2(j);
        let dpu = pv.d1 * u.d1 + pv.v * u.d2;
        u.v * (-dpu + q(j).v * u.v)
    };
    let span = prob.b() - prob.a();
    let big_q: CoefFn = Arc::new(move |x: Jet| {
        let h = 1e-5 * span;
        let (f0, fp, fm) = (q_value(x.v), q_value(x.v + h), q_value(x.v - h));
        let g1 = (fp - fm) / (2.0 * h);
        let g2 = (fp - 2.0 * f0 + fm) / (h * h);
        Jet { v: f0, d1: g1 * x.d1, d2: g2 * x.d1 * x.d1 + g1 * x.d2 }
    });
    SLProblem::new(prob.a(), prob.b(), big_p, big_q, big_r, [EndpointClass::Regular; 2])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_transform() {
        let prob = SLProblem::new(
            0.0,
            1.0,
            Arc::new(|_| Jet::cst(1.0)),
            Arc::new(|_| Jet::cst(0.0)),
            Arc::new(|_| Jet::cst(1.0)),
            [EndpointClass::Regular; 2],
        )
        .unwrap();
        let res = liouville_transform(&prob, 0.25, &[0.1, 0.5, 0.9]).unwrap();
        for s in &res.samples {
            assert!((s.xi - (s.x - 0.25)).abs() < 1e-13);
            assert_eq!(s.v, 0.0);
        }
        assert!((res.b_end - res.a_end - 1.0).abs() < 1e-13);
    }
}
