//! Spectral ζ-functions of self-adjoint extensions of quasi-regular
//! Sturm–Liouville operators.
//!
//! The crate is organized bottom-up:
//!
//! * [`specfun`] — special functions of complex argument;
//! * [`series`] — truncated power-series algebra and the ζ(n) recursion;
//! * [`quadrature`] — endpoint-singular and adaptive integration rules;
//! * [`slcore`] — boundary conditions, characteristic functions, trace of the
//!   resolvent, Weyl constants and the Liouville transform;
//! * [`spectrum`] — eigenvalues by root finding and direct ζ summation;
//! * [`continuation`] — analytic continuation of ζ(s) by asymptotic
//!   subtraction, residues and regularized determinants;
//! * [`bessel`], [`legendre`] — the two worked models.

pub mod bessel;
pub mod continuation;
pub mod error;
pub mod legendre;
pub mod quadrature;
pub mod series;
pub mod slcore;
pub mod specfun;
pub mod spectrum;

pub use error::{Error, Result};
