//! Truncated formal power series and the ζ(n) recursion.
//!
//! [`PowerSeries`] is generic over the coefficient field so that the same
//! algebra runs in complex binary64 (model evaluators) and in exact
//! rationals (coefficient tables that must come out exactly).
//!
//! The logarithm of a normalized series c(y) = 1 + Σ c_j y^j is obtained from
//! the recursion d_1 = c_1, d_j = c_j − Σ_{ℓ=1}^{j−1} (ℓ/j) c_{j−ℓ} d_ℓ, and
//! the ζ-values of an operator with characteristic function
//! F(z) = Σ a_j z^j having a zero of order m0 at the origin follow from the
//! same recursion applied to a_{j+m0}/a_{m0}: ζ(n) = −n b_n.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Num;

use crate::error::{Error, Result};

/// Coefficient field of a [`PowerSeries`].
pub trait Coeff: Num + Clone + Neg<Output = Self> + Debug {
    /// The rational number n/d in this field.
    fn from_ratio(n: i64, d: i64) -> Self;
}

impl Coeff for Complex64 {
    fn from_ratio(n: i64, d: i64) -> Self {
        Complex64::new(n as f64 / d as f64, 0.0)
    }
}

impl Coeff for BigRational {
    fn from_ratio(n: i64, d: i64) -> Self {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }
}

/// Truncated power series Σ_{j=0}^{N} c_j z^j with truncation order N.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries<T: Coeff = Complex64> {
    coeffs: Vec<T>,
}

impl<T: Coeff> PowerSeries<T> {
    /// Series with the given coefficients; the truncation order is
    /// `coeffs.len() − 1`.  An empty list is treated as the zero series of
    /// order 0.
    pub fn new(coeffs: Vec<T>) -> Self {
        if coeffs.is_empty() {
            return PowerSeries { coeffs: vec![T::zero()] };
        }
        PowerSeries { coeffs }
    }

    /// Zero series of truncation order `order`.
    pub fn zero(order: usize) -> Self {
        PowerSeries { coeffs: vec![T::zero(); order + 1] }
    }

    /// The constant 1 with truncation order `order`.
    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = T::one();
        s
    }

    /// The monomial z with truncation order `order` (≥ 1).
    pub fn monomial(order: usize) -> Self {
        let mut s = Self::zero(order.max(1));
        s.coeffs[1] = T::one();
        s
    }

    /// Truncation order N.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient list c_0..=c_N.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient c_j (zero beyond the truncation order is *not* implied:
    /// callers must respect [`order`](Self::order)).
    pub fn coeff(&self, j: usize) -> &T {
        &self.coeffs[j]
    }

    /// Consumes the series returning its coefficients.
    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Truncates to order `n` (no-op if already lower).
    pub fn truncate(&self, n: usize) -> Self {
        let k = (n + 1).min(self.coeffs.len());
        PowerSeries { coeffs: self.coeffs[..k].to_vec() }
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &T) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    /// Multiplies by z^k; the truncation order grows by k.
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        PowerSeries { coeffs }
    }

    /// Divides by z^k, discarding c_0..c_{k−1}; the order shrinks by k.
    pub fn unshift(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(Error::InsufficientOrder { needed: k, have: self.order() });
        }
        Ok(PowerSeries { coeffs: self.coeffs[k..].to_vec() })
    }

    /// Formal derivative (order shrinks by one, minimum 0).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let coeffs = (1..self.coeffs.len())
            .map(|j| self.coeffs[j].clone() * T::from_ratio(j as i64, 1))
            .collect();
        PowerSeries { coeffs }
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn leading_index(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Multiplicative inverse; requires c_0 ≠ 0.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeffs[0].clone();
        if c0.is_zero() {
            return Err(Error::LeadingCoefficientZero(0));
        }
        let n = self.order();
        let mut r: Vec<T> = Vec::with_capacity(n + 1);
        r.push(T::one() / c0.clone());
        for j in 1..=n {
            let mut acc = T::zero();
            for l in 1..=j {
                acc = acc + self.coeffs[l].clone() * r[j - l].clone();
            }
            r.push(-acc / c0.clone());
        }
        Ok(PowerSeries { coeffs: r })
    }

    /// exp of a series with c_0 = 0 (the constant term must vanish so that
    /// the result stays in the coefficient field).
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidInput("series exp requires a vanishing constant term".into()));
        }
        // e' = c' e  ⇒  j e_j = Σ_{ℓ=1}^{j} ℓ c_ℓ e_{j−ℓ}
        let n = self.order();
        let mut e: Vec<T> = Vec::with_capacity(n + 1);
        e.push(T::one());
        for j in 1..=n {
            let mut acc = T::zero();
            for l in 1..=j {
                acc = acc + T::from_ratio(l as i64, 1) * self.coeffs[l].clone() * e[j - l].clone();
            }
            e.push(acc / T::from_ratio(j as i64, 1));
        }
        Ok(PowerSeries { coeffs: e })
    }

    /// Integer power k ≥ 0 by repeated squaring.
    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Composition self(inner(z)); requires inner_0 = 0.  The result has the
    /// smaller of the two truncation orders.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::InvalidInput("composition requires inner series with zero constant term".into()));
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        // Horner: (((c_N) g + c_{N−1}) g + …) + c_0
        let mut acc = Self::zero(n);
        for j in (0..=n).rev() {
            acc = &acc * &inner;
            acc.coeffs[0] = acc.coeffs[0].clone() + self.coeffs[j].clone();
        }
        Ok(acc)
    }
}

impl PowerSeries<Complex64> {
    /// Evaluates Σ c_j z^j by Horner's rule.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    /// Converts an exact rational series to complex binary64.
    pub fn from_rational(s: &PowerSeries<BigRational>) -> Self {
        PowerSeries {
            coeffs: s
                .coeffs
                .iter()
                .map(|q| Complex64::new(crate::specfun::rational_to_f64(q), 0.0))
                .collect(),
        }
    }
}

impl<'a, T: Coeff> Add for &'a PowerSeries<T> {
    type Output = PowerSeries<T>;
    fn add(self, rhs: Self) -> PowerSeries<T> {
        let n = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=n).map(|j| self.coeffs[j].clone() + rhs.coeffs[j].clone()).collect(),
        }
    }
}

impl<'a, T: Coeff> Sub for &'a PowerSeries<T> {
    type Output = PowerSeries<T>;
    fn sub(self, rhs: Self) -> PowerSeries<T> {
        let n = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=n).map(|j| self.coeffs[j].clone() - rhs.coeffs[j].clone()).collect(),
        }
    }
}

impl<'a, T: Coeff> Mul for &'a PowerSeries<T> {
    type Output = PowerSeries<T>;
    fn mul(self, rhs: Self) -> PowerSeries<T> {
        let n = self.order().min(rhs.order());
        let mut coeffs = vec![T::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                coeffs[i + j] = coeffs[i + j].clone() + self.coeffs[i].clone() * rhs.coeffs[j].clone();
            }
        }
        PowerSeries { coeffs }
    }
}

/// Binary operations selectable at run time (mirrors the public methods).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    /// Coefficientwise sum, truncated to the smaller order.
    Add,
    /// Cauchy product, truncated to the smaller order.
    Mul,
}

/// Applies a binary [`SeriesOp`].
pub fn ps_arith<T: Coeff>(op: SeriesOp, lhs: &PowerSeries<T>, rhs: &PowerSeries<T>) -> PowerSeries<T> {
    match op {
        SeriesOp::Add => lhs + rhs,
        SeriesOp::Mul => lhs * rhs,
    }
}

/// Logarithm of a normalized series (c_0 = 1 exactly).
///
/// Returns d with d_0 = 0 and exp(Σ d_j y^j) ≡ Σ c_j y^j to the truncation
/// order.
pub fn ps_log<T: Coeff>(c: &PowerSeries<T>) -> Result<PowerSeries<T>> {
    if !c.coeffs[0].is_one() {
        return Err(Error::NotNormalized);
    }
    Ok(PowerSeries { coeffs: log_recursion(&c.coeffs) })
}

/// d_1 = c_1, d_j = c_j − Σ_{ℓ=1}^{j−1} (ℓ/j) c_{j−ℓ} d_ℓ (c_0 = 1 assumed).
fn log_recursion<T: Coeff>(c: &[T]) -> Vec<T> {
    let n = c.len() - 1;
    let mut d: Vec<T> = vec![T::zero(); n + 1];
    for j in 1..=n {
        let mut acc = c[j].clone();
        for l in 1..j {
            acc = acc - T::from_ratio(l as i64, j as i64) * c[j - l].clone() * d[l].clone();
        }
        d[j] = acc;
    }
    d
}

/// ζ(1), …, ζ(n_max) from the Taylor coefficients a_j of a characteristic
/// function with a zero of order `m0` at the origin.
///
/// With b_j the logarithm coefficients of Σ_j (a_{j+m0}/a_{m0}) z^j,
/// ζ(n) = −n b_n.  The recursion only uses ratios, so any nonzero multiple
/// of F gives the same values.
pub fn zeta_from_series<T: Coeff>(a: &PowerSeries<T>, m0: usize, n_max: usize) -> Result<Vec<T>> {
    if n_max == 0 {
        return Err(Error::InvalidInput("n_max must be at least 1".into()));
    }
    if a.order() < m0 + n_max {
        return Err(Error::InsufficientOrder { needed: m0 + n_max, have: a.order() });
    }
    let lead = a.coeffs[m0].clone();
    if lead.is_zero() {
        return Err(Error::LeadingCoefficientZero(m0));
    }
    let c: Vec<T> = (0..=n_max).map(|j| a.coeffs[j + m0].clone() / lead.clone()).collect();
    let b = log_recursion(&c);
    Ok((1..=n_max).map(|n| -(T::from_ratio(n as i64, 1) * b[n].clone())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(v: &[f64]) -> PowerSeries<Complex64> {
        PowerSeries::new(v.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(ps_arith(SeriesOp::Mul, &cs(&[1.0, 1.0]), &cs(&[1.0, 1.0])), cs(&[1.0, 2.0]));
        let a = PowerSeries::new(vec![q(1, 1), q(1, 1), q(0, 1)]);
        assert_eq!(&a * &a, PowerSeries::new(vec![q(1, 1), q(2, 1), q(1, 1)]));
        assert_eq!(cs(&[0.0, 2.0]).scale(&Complex64::new(0.5, 0.0)), cs(&[0.0, 1.0]));
        assert_eq!(cs(&[1.0]).shift(2), cs(&[0.0, 0.0, 1.0]));
        assert_eq!(cs(&[1.0, 2.0, 3.0]).truncate(1), cs(&[1.0, 2.0]));
        assert_eq!(ps_arith(SeriesOp::Add, &cs(&[1.0, 2.0, 3.0]), &cs(&[1.0, 1.0])), cs(&[2.0, 3.0]));
    }

    #[test]
    fn log_examples() {
        let mercator = PowerSeries::new(vec![q(1, 1), q(1, 1), q(0, 1), q(0, 1)]);
        assert_eq!(ps_log(&mercator).unwrap().into_coeffs(), vec![q(0, 1), q(1, 1), q(-1, 2), q(1, 3)]);
        let one = PowerSeries::new(vec![q(1, 1), q(0, 1), q(0, 1)]);
        assert_eq!(ps_log(&one).unwrap().into_coeffs(), vec![q(0, 1); 3]);
        let c = PowerSeries::new(vec![q(1, 1), q(2, 1), q(3, 1)]);
        let d = ps_log(&c).unwrap();
        assert_eq!(d.coeffs().to_vec(), vec![q(0, 1), q(2, 1), q(1, 1)]);
        // cross-check by exponentiating back
        assert_eq!(d.exp().unwrap(), c);
        assert!(matches!(ps_log(&cs(&[2.0, 1.0])), Err(Error::NotNormalized)));
    }

    #[test]
    fn zeta_examples() {
        let pi2 = std::f64::consts::PI.powi(2);
        let a = cs(&[0.0, 2.0, -2.0, 4.0 - pi2 / 3.0, pi2 - 10.0]);
        let z = zeta_from_series(&a, 1, 3).unwrap();
        assert!((z[0].re - 1.0).abs() < 1e-14);
        assert!((z[1].re - (pi2 / 3.0 - 3.0)).abs() < 1e-14);
        assert!((z[2].re - (10.0 - pi2)).abs() < 1e-13);
        assert_eq!(zeta_from_series(&cs(&[1.0, -1.0]), 0, 1).unwrap(), vec![Complex64::new(1.0, 0.0)]);
        // brute force: single eigenvalue 5, F(z) = 1 − z/5
        let f = PowerSeries::new(vec![q(1, 1), q(-1, 5), q(0, 1), q(0, 1), q(0, 1)]);
        let z = zeta_from_series(&f, 0, 4).unwrap();
        for (n, v) in z.iter().enumerate() {
            assert_eq!(*v, BigRational::new(BigInt::from(1), BigInt::from(5i64.pow(n as u32 + 1))));
        }
        assert!(matches!(zeta_from_series(&a, 0, 3), Err(Error::LeadingCoefficientZero(0))));
        assert!(matches!(zeta_from_series(&a, 1, 4), Err(Error::InsufficientOrder { .. })));
    }

    #[test]
    fn inverse_and_compose() {
        // 1/(1−z) = Σ z^j
        let s = PowerSeries::new(vec![q(1, 1), q(-1, 1), q(0, 1), q(0, 1)]);
        assert_eq!(s.inverse().unwrap().into_coeffs(), vec![q(1, 1); 4]);
        // exp(log(1+z)) = 1+z through composition: exp series ∘ log series
        let e = PowerSeries::new(vec![q(1, 1), q(1, 1), q(1, 2), q(1, 6), q(1, 24)]);
        let l = PowerSeries::new(vec![q(0, 1), q(1, 1), q(-1, 2), q(1, 3), q(-1, 4)]);
        assert_eq!(e.compose(&l).unwrap().into_coeffs(), vec![q(1, 1), q(1, 1), q(0, 1), q(0, 1), q(0, 1)]);
        assert_eq!(s.pow(2).into_coeffs(), vec![q(1, 1), q(-2, 1), q(1, 1), q(0, 1)]);
    }
}
