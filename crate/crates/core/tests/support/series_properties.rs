//! Randomized properties of the power-series module, shared by the
//! property-test target and the acceptance harness.

use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use slzeta::series::{ps_log, zeta_from_series, PowerSeries};

/// Number of randomized cases per property.
pub const CASES: u32 = 200;

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + b.norm())
}

/// A normalized series 1 + c_1 y + … + c_n y^n with moderate coefficients.
pub fn normalized_series() -> impl Strategy<Value = PowerSeries> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..12).prop_map(|v| {
        let mut c = vec![Complex64::new(1.0, 0.0)];
        c.extend(v.into_iter().map(|(re, im)| Complex64::new(re, im)));
        PowerSeries::new(c)
    })
}

/// Nonzero roots λ_j (bounded away from zero), a zero multiplicity m0 and
/// a nonzero overall constant.
pub fn product_data() -> impl Strategy<Value = (Vec<f64>, usize, Complex64)> {
    (
        prop::collection::vec((0.5f64..8.0, prop::bool::ANY), 1..6),
        0usize..3,
        (0.1f64..10.0, -3.0f64..3.0),
    )
        .prop_map(|(roots, m0, (r, th))| {
            let roots = roots.into_iter().map(|(x, neg)| if neg { -x } else { x }).collect();
            (roots, m0, Complex64::from_polar(r, th))
        })
}

/// Taylor coefficients of const · z^{m0} Π_j (1 − z/λ_j), to `order`.
pub fn product_series(roots: &[f64], m0: usize, constant: Complex64, order: usize) -> PowerSeries {
    let mut p = vec![Complex64::new(0.0, 0.0); order + 1];
    p[m0] = constant;
    for &l in roots {
        for j in (1..=order).rev() {
            let prev = p[j - 1];
            p[j] -= prev / l;
        }
    }
    PowerSeries::new(p)
}

/// exp(log c) reproduces c.
pub fn exp_log_identity(c: &PowerSeries) -> Result<(), TestCaseError> {
    let d = ps_log(c).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let back = d.exp().map_err(|e| TestCaseError::fail(e.to_string()))?;
    for (j, (x, y)) in back.coeffs().iter().zip(c.coeffs()).enumerate() {
        prop_assert!(close(*x, *y, 1e-10), "coefficient {j}: {x} vs {y}");
    }
    Ok(())
}

/// The series recursion on a finite product equals Σ_j λ_j^{−n}.
pub fn product_form_matches_brute_force(roots: &[f64], m0: usize, constant: Complex64) -> Result<(), TestCaseError> {
    let n_max = 6;
    let a = product_series(roots, m0, constant, m0 + n_max);
    let z = zeta_from_series(&a, m0, n_max).map_err(|e| TestCaseError::fail(e.to_string()))?;
    for n in 1..=n_max {
        let brute: f64 = roots.iter().map(|l| l.powi(-(n as i32))).sum();
        let scale: f64 = roots.iter().map(|l| l.abs().powi(-(n as i32))).sum();
        prop_assert!(
            (z[n - 1] - brute).norm() <= 1e-10 * (1.0 + scale),
            "n = {n}: recursion {} vs brute force {brute}",
            z[n - 1]
        );
    }
    Ok(())
}

/// ζ is invariant under F → κF and scales as ζ(n) → ρ^n ζ(n) under
/// F(z) → F(ρz).
pub fn scaling_invariance(roots: &[f64], m0: usize, constant: Complex64, rho: f64) -> Result<(), TestCaseError> {
    let n_max = 5;
    let a = product_series(roots, m0, Complex64::new(1.0, 0.0), m0 + n_max);
    let base = zeta_from_series(&a, m0, n_max).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let scaled = zeta_from_series(&a.scale(&constant), m0, n_max).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let dilated_coeffs: Vec<Complex64> = a.coeffs().iter().enumerate().map(|(j, c)| c * rho.powi(j as i32)).collect();
    let dilated = zeta_from_series(&PowerSeries::new(dilated_coeffs), m0, n_max).map_err(|e| TestCaseError::fail(e.to_string()))?;
    for n in 0..n_max {
        prop_assert!(close(scaled[n], base[n], 1e-11), "constant factor changed zeta({})", n + 1);
        let expect = base[n] * rho.powi(n as i32 + 1);
        prop_assert!(close(dilated[n], expect, 1e-10), "dilation: {} vs {expect}", dilated[n]);
    }
    Ok(())
}
