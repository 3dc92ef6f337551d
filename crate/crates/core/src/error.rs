//! Error type shared by every module of the crate.
//!
//! Numerical routines never return NaN silently: every failure mode that the
//! library can detect is reported through one of these variants.

use thiserror::Error;

/// Errors produced by the special-function kernel, the series algebra, the
/// Sturm–Liouville core, the spectrum solver and the continuation engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Γ or ψ evaluated at a nonpositive integer.
    #[error("pole at nonpositive integer {0}")]
    PoleAtNonpositiveInteger(f64),
    /// Y or Hankel function evaluated at the origin.
    #[error("singularity at the origin")]
    OriginSingularity,
    /// Argument outside the range where the implementation is accurate or
    /// where the result is representable.
    #[error("unsupported range: {0}")]
    UnsupportedRange(String),
    /// Legendre functions requested at x = ±1.
    #[error("Legendre functions are not evaluated at the endpoints x = ±1")]
    EndpointEvaluation,
    /// Argument on the principal branch cut (negative real axis).
    #[error("argument {0} lies on the branch cut")]
    BranchCutArgument(String),
    /// `ps_log` requires the constant coefficient to be exactly one.
    #[error("series is not normalized: constant coefficient must be 1")]
    NotNormalized,
    /// The coefficient a_{m0} used as denominator vanishes.
    #[error("leading coefficient a_{0} vanishes")]
    LeadingCoefficientZero(usize),
    /// The series is truncated too early for the requested quantity.
    #[error("insufficient series order: need {needed}, have {have}")]
    InsufficientOrder { needed: usize, have: usize },
    /// Coupling matrix not in SL(2, R).
    #[error("coupling matrix must be unimodular (det R = {0})")]
    NotUnimodular(f64),
    /// Resolvent trace requested at (numerically) an eigenvalue.
    #[error("z = {0} is numerically an eigenvalue")]
    AtEigenvalue(String),
    /// A quadrature did not reach its tolerance.
    #[error("quadrature failure: {0}")]
    QuadratureFailure(String),
    /// Coefficient functions fail the smoothness/positivity requirements.
    #[error("non-smooth or invalid coefficients: {0}")]
    NonSmoothCoefficients(String),
    /// Sign-change bracketing could not locate the requested roots.
    #[error("bracketing failure: {0}")]
    BracketingFailure(String),
    /// Characteristic function not real on the real axis.
    #[error("characteristic function is not real at z = {0}")]
    NonRealEvaluation(String),
    /// Zero-multiplicity tests disagree.
    #[error("zero multiplicity inconclusive: {0}")]
    Inconclusive(String),
    /// Direct summation requested outside its half-plane of convergence.
    #[error("direct sum requires Re(s) > 1/2 (got {0})")]
    AbscissaViolation(f64),
    /// Model parameter outside its admissible range.
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    /// No reference closed form exists for the requested case.
    #[error("closed form unavailable: {0}")]
    FormulaUnavailable(String),
    /// s lies outside the strip of validity of the continuation.
    #[error("s = {s} outside the strip ({lo}, {hi})")]
    OutsideStrip { s: String, lo: f64, hi: f64 },
    /// s is within the exclusion radius of a pole.
    #[error("s is within {distance:e} of the pole at {pole}")]
    PoleProximity { pole: f64, distance: f64 },
    /// s is within the exclusion radius of a branch point.
    #[error("s is within {distance:e} of the branch point at {point}")]
    BranchPointProximity { point: f64, distance: f64 },
    /// Richardson extrapolation did not stabilize.
    #[error("extrapolation did not converge: {0}")]
    NonConvergentExtrapolation(String),
    /// The subtracted integrand decays slower than the expansion promises.
    #[error("slow decay of subtracted integrand: {0}")]
    SlowDecay(String),
    /// Generic invalid input (empty lists, bad orders, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
