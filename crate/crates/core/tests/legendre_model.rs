//! Integration tests of the Legendre model on (−1, 1).

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use slzeta::legendre::{self, ClosedFormTarget, LegendrePreset};
use slzeta::series::zeta_from_series;
use slzeta::slcore::{liouville_transform, BoundaryCondition, EndpointClass, Jet, SLProblem};
use slzeta::spectrum::{find_eigenvalues, zero_multiplicity, zeta_direct_sum};

const PSI: f64 = 0.75 * PI;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Independent oracle: Σ_n (n(n+1))^{−s} by explicit summation to N plus an
/// Euler–Maclaurin tail of the binomial expansion Σ_k binom(−s,k) n^{−2s−k}.
fn friedrichs_zeta_oracle(s: f64) -> f64 {
    let n_sum = 2000usize;
    let head: f64 = (1..n_sum).map(|n| ((n * (n + 1)) as f64).powf(-s)).sum();
    let nn = n_sum as f64;
    let mut tail = 0.0;
    let mut binom = 1.0;
    for k in 0..30 {
        let a = 2.0 * s + k as f64;
        let em = nn.powf(1.0 - a) / (a - 1.0) + 0.5 * nn.powf(-a) + a * nn.powf(-a - 1.0) / 12.0
            - a * (a + 1.0) * (a + 2.0) * nn.powf(-a - 3.0) / 720.0;
        tail += binom * em;
        binom *= (-s - k as f64) / (k as f64 + 1.0);
    }
    head + tail
}

#[test]
fn nu_solves_the_index_equation() {
    for &z in &[c(0.3), c(-0.2), Complex64::new(5.0, -2.0), Complex64::new(-40.0, 1.0)] {
        let nu = legendre::nu_of_z(z);
        assert!((nu * (nu + 1.0) - z).norm() < 1e-12 * (1.0 + z.norm()));
        assert!(nu.re >= -0.5);
    }
}

#[test]
fn friedrichs_characteristic_function_is_a_sine() {
    let cf = legendre::char_fn_preset(LegendrePreset::Friedrichs).unwrap();
    for &z in &[c(0.7), c(-3.0), Complex64::new(12.0, 5.0), c(100.5)] {
        let nu = legendre::nu_of_z(z);
        let expect = 2.0 / PI * (PI * nu).sin();
        let got = cf.eval(z).unwrap();
        assert!((got - expect).norm() < 1e-11 * (1.0 + expect.norm()), "z = {z}: {got} vs {expect}");
    }
}

#[test]
fn periodic_extension_spectrum() {
    let cf = legendre::char_fn_preset(LegendrePreset::Periodic).unwrap();
    assert_eq!(zero_multiplicity(&cf).unwrap(), 2);
    let t = find_eigenvalues(&cf, &legendre::spectral_constants(), 10, -10.0).unwrap();
    assert_eq!(t.zero_multiplicity, 2);
    // the even Legendre polynomials satisfy the periodic conditions
    for n in [2.0f64, 4.0, 6.0, 8.0, 10.0] {
        let target = n * (n + 1.0);
        assert!(t.eigenvalues.iter().any(|e| (e.lambda - target).abs() < 1e-9 * target), "missing {target}");
    }
    assert!(t.eigenvalues.iter().all(|e| e.multiplicity == 1));
    let reference = [6.0, 8.8877, 20.0, 25.83, 42.0, 50.84, 72.0, 83.91, 110.0, 125.02];
    for (e, r) in t.eigenvalues.iter().zip(reference) {
        assert!((e.lambda - r).abs() < 1e-2, "{} vs {r}", e.lambda);
    }
}

#[test]
fn separated_zeta1_closed_forms() {
    for &(a, b) in &[(0.0, 0.0), (0.0, 1.0), (0.4, 0.9), (2.0, 0.3), (1.0, 2.141592653589793)] {
        let bc = BoundaryCondition::separated(a, b).unwrap();
        let cf = legendre::char_fn_bc(&bc).unwrap();
        let m0 = zero_multiplicity(&cf).unwrap();
        let z = zeta_from_series(cf.small_z().unwrap(), m0, 1).unwrap();
        let f = legendre::zeta_closed_forms(ClosedFormTarget::Bc(bc), 1).unwrap();
        assert!((z[0] - f).norm() < 1e-11, "(α, β) = ({a}, {b}), m0 = {m0}: {} vs {f}", z[0]);
    }
}

#[test]
fn coupled_zeta1_closed_forms() {
    for &(phi, r) in &[(0.5, [[1.0, 0.0], [0.0, 1.0]]), (0.0, [[2.0, 1.0], [1.0, 1.0]]), (1.3, [[1.0, 0.5], [0.0, 1.0]])] {
        let bc = BoundaryCondition::coupled(phi, r).unwrap();
        let cf = legendre::char_fn_bc(&bc).unwrap();
        let m0 = zero_multiplicity(&cf).unwrap();
        let z = zeta_from_series(cf.small_z().unwrap(), m0, 1).unwrap();
        let f = legendre::zeta_closed_forms(ClosedFormTarget::Bc(bc), 1).unwrap();
        assert!((z[0] - f).norm() < 1e-11, "φ = {phi}, m0 = {m0}: {} vs {f}", z[0]);
    }
}

#[test]
fn friedrichs_continuation_matches_independent_sum() {
    for s in [0.6, 0.75, 0.95] {
        let r = legendre::zeta_continued(0.0, c(s), 3, PSI).unwrap();
        let oracle = friedrichs_zeta_oracle(s);
        assert!((r.value - oracle).norm() < 1e-8 + r.abs_error_estimate, "s = {s}: {} vs {oracle}", r.value);
    }
}

#[test]
fn continuation_is_independent_of_ray_and_split() {
    let beta = PI / 2.0;
    let s = Complex64::new(-0.4, 0.7);
    let a = legendre::zeta_continued(beta, s, 3, PSI).unwrap();
    let b = legendre::zeta_continued_with_split(beta, s, 3, 0.6 * PI, 3.0).unwrap();
    assert!((a.value - b.value).norm() < 1e-7, "{} vs {}", a.value, b.value);
}

#[test]
fn continuation_matches_direct_sum_for_generic_beta() {
    let beta = 1.0;
    let cf = legendre::char_fn_preset(LegendrePreset::Separated0Beta(beta)).unwrap();
    let sc = legendre::spectral_constants();
    let t = find_eigenvalues(&cf, &sc, 2000, -10.0).unwrap();
    let s = c(0.8);
    let d = zeta_direct_sum(&t, s, &sc).unwrap();
    let r = legendre::zeta_continued(beta, s, 3, PSI).unwrap();
    assert!((d.value - r.value).norm() <= d.abs_error_estimate + r.abs_error_estimate, "{} vs {}", d.value, r.value);
}

#[test]
fn asymptotics_improve_with_order() {
    let beta = PI / 2.0;
    let cf = legendre::char_fn_preset(LegendrePreset::Separated0Beta(beta)).unwrap();
    let e = Complex64::from_polar(1.0, PSI);
    let t = 1e3;
    let exact = e * cf.log_derivative(e * t).unwrap();
    let errs: Vec<f64> = (0..=3).map(|n| (exact - legendre::logderiv_asym(beta, PSI, n, t).unwrap()).norm()).collect();
    for w in errs.windows(2) {
        assert!(w[1] < w[0], "{errs:?}");
    }
}

#[test]
fn liouville_transform_of_the_legendre_operator() {
    // k = 0: ξ = arcsin x and V(ξ) = −1/4 − sec²ξ/4
    let prob = SLProblem::new(
        -1.0,
        1.0,
        Arc::new(|x: Jet| 1.0 - x * x),
        Arc::new(|_| Jet::cst(0.0)),
        Arc::new(|_| Jet::cst(1.0)),
        [EndpointClass::QuasiRegular; 2],
    )
    .unwrap();
    let grid: Vec<f64> = (1..40).map(|i| -0.95 + 1.9 * i as f64 / 40.0).collect();
    let res = liouville_transform(&prob, 0.0, &grid).unwrap();
    assert!((res.a_end + PI / 2.0).abs() < 1e-10 && (res.b_end - PI / 2.0).abs() < 1e-10);
    for s in &res.samples {
        assert!((s.xi - s.x.asin()).abs() < 1e-12);
        let expect = -0.25 - 0.25 / s.xi.cos().powi(2);
        assert!((s.v - expect).abs() < 1e-12 * expect.abs(), "x = {}: {} vs {expect}", s.x, s.v);
    }
}

#[test]
fn preset_validation() {
    assert!(LegendrePreset::Separated0Beta(0.0).boundary_condition().is_err());
    assert!(LegendrePreset::Separated0Beta(PI).boundary_condition().is_err());
}
