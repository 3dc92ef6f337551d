//! Problem configuration: a single JSON document naming the model, its
//! parameters, the boundary condition and the task options.
//!
//! ```json
//! {
//!   "model": "bessel",
//!   "params": { "delta": 0, "nu": 0, "gamma": 0, "b": 1 },
//!   "bc": { "type": "preset", "name": "worked" },
//!   "options": { "N": 4, "psi": 2.356194490192345, "s": [0.75] }
//! }
//! ```
//!
//! Unknown keys are rejected; validation reports every violation with its
//! field path.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use slzeta::bessel::BesselParams;
use slzeta::slcore::BoundaryCondition;

/// Default ray angle Ψ = 3π/4.
pub const DEFAULT_PSI: f64 = 0.75 * PI;
/// Default asymptotic order N.
pub const DEFAULT_ORDER: usize = 4;
/// Default split point C.
pub const DEFAULT_SPLIT: f64 = 1.0;
/// Default number of eigenvalues.
pub const DEFAULT_COUNT: usize = 10;
/// Default lower end of the eigenvalue search.
pub const DEFAULT_LOWER_BOUND: f64 = -10.0;
/// Default largest n for ζ(n).
pub const DEFAULT_N_MAX: usize = 3;
/// Default s grid.
pub const DEFAULT_S: [f64; 1] = [0.75];

/// Which model operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Generalized Bessel operator on (0, b).
    Bessel,
    /// Legendre operator on (−1, 1).
    Legendre,
}

/// Model parameters (Bessel only; Legendre takes none).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    /// δ > −1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    /// ν < 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    /// γ ∈ [0, 1).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    /// b > 0.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
}

/// Named extensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PresetName {
    /// α = β = 0.
    Friedrichs,
    /// Legendre: φ = 0, R = I₂.
    Periodic,
    /// Bessel: the Krein–von Neumann extension.
    Krein,
    /// Bessel: the worked extension α = π/2, β = 0 (γ = 0).
    Worked,
}

/// Boundary-condition descriptor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum BcConfig {
    /// Separated conditions with angles α, β ∈ [0, π).
    Separated { alpha: f64, beta: f64 },
    /// Coupled conditions with phase φ ∈ [0, π) and R = [R11, R12, R21, R22].
    Coupled {
        phi: f64,
        #[serde(rename = "R")]
        r: [f64; 4],
    },
    /// A named extension.
    Preset { name: PresetName },
}

/// Task options; every field has a documented default.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    /// Asymptotic order N (default 4).
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    /// Ray angle Ψ ∈ (π/2, π) (default 3π/4).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<f64>,
    /// Split point C > 0 (default 1).
    #[serde(rename = "C", default, skip_serializing_if = "Option::is_none")]
    pub c_split: Option<f64>,
    /// Number of eigenvalues (default 10).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    /// Lower end of the eigenvalue search (default −10).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower_bound: Option<f64>,
    /// Real s values (default [0.75]).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<f64>>,
    /// Largest n for ζ(n) (default 3).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    /// Sample points z = [re, im] for charfn/trace (default [[−1, 0], [1, 0]]).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<Vec<[f64; 2]>>,
    /// Absolute quadrature tolerance (default 1e−12).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abs_tol: Option<f64>,
    /// Relative quadrature tolerance (default 1e−11).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_tol: Option<f64>,
}

/// A complete problem description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    /// Model operator.
    pub model: Model,
    /// Model parameters.
    #[serde(default)]
    pub params: Params,
    /// Boundary condition.
    pub bc: BcConfig,
    /// Task options.
    #[serde(default)]
    pub options: Options,
}

/// Configuration errors.
#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    /// The document is not well formed.
    #[error("parse error: {0}")]
    Parse(String),
    /// The document is well formed but violates invariants.
    #[error("validation error: {}", .0.join("; "))]
    Validation(Vec<String>),
}

/// Reads a configuration from a path, or parses the text itself when it
/// starts with `{`.
pub fn load_problem(path_or_inline: &str) -> Result<ProblemConfig, ConfigError> {
    let text = if path_or_inline.trim_start().starts_with('{') {
        path_or_inline.to_string()
    } else {
        std::fs::read_to_string(path_or_inline).map_err(|e| ConfigError::Parse(format!("{path_or_inline}: {e}")))?
    };
    let cfg: ProblemConfig = serde_json::from_str(&text).map_err(|e| ConfigError::Parse(e.to_string()))?;
    cfg.validate()?;
    Ok(cfg)
}

impl ProblemConfig {
    /// Bessel parameters with defaults δ = ν = γ = 0, b = 1.
    pub fn bessel_params(&self) -> Result<BesselParams, ConfigError> {
        let p = &self.params;
        BesselParams::new(p.delta.unwrap_or(0.0), p.nu.unwrap_or(0.0), p.gamma.unwrap_or(0.0), p.b.unwrap_or(1.0))
            .map_err(|e| ConfigError::Validation(vec![format!("params: {e}")]))
    }

    /// Ray angle Ψ.
    pub fn psi(&self) -> f64 {
        self.options.psi.unwrap_or(DEFAULT_PSI)
    }

    /// Asymptotic order N.
    pub fn order(&self) -> usize {
        self.options.order.unwrap_or(DEFAULT_ORDER)
    }

    /// Split point C.
    pub fn c_split(&self) -> f64 {
        self.options.c_split.unwrap_or(DEFAULT_SPLIT)
    }

    /// Number of eigenvalues.
    pub fn count(&self) -> usize {
        self.options.count.unwrap_or(DEFAULT_COUNT)
    }

    /// Lower end of the eigenvalue search.
    pub fn lower_bound(&self) -> f64 {
        self.options.lower_bound.unwrap_or(DEFAULT_LOWER_BOUND)
    }

    /// The s grid.
    pub fn s_list(&self) -> Vec<f64> {
        self.options.s.clone().unwrap_or_else(|| DEFAULT_S.to_vec())
    }

    /// Largest n for ζ(n).
    pub fn n_max(&self) -> usize {
        self.options.n_max.unwrap_or(DEFAULT_N_MAX)
    }

    /// Sample points for charfn/trace.
    pub fn z_list(&self) -> Vec<[f64; 2]> {
        self.options.z.clone().unwrap_or_else(|| vec![[-1.0, 0.0], [1.0, 0.0]])
    }

    /// The boundary condition, when given explicitly.
    pub fn explicit_bc(&self) -> Option<BoundaryCondition> {
        match self.bc {
            BcConfig::Separated { alpha, beta } => Some(BoundaryCondition::Separated { alpha, beta }),
            BcConfig::Coupled { phi, r } => Some(BoundaryCondition::Coupled { phi, r: [[r[0], r[1]], [r[2], r[3]]] }),
            BcConfig::Preset { .. } => None,
        }
    }

    /// Checks every invariant and lists all violations.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let mut v = Vec::new();
        let p = &self.params;
        match self.model {
            Model::Bessel => {
                if let Some(d) = p.delta {
                    if !(d > -1.0 && d.is_finite()) {
                        v.push(format!("params.delta: delta must be > -1 (got {d})"));
                    }
                }
                if let Some(n) = p.nu {
                    if !(n < 1.0 && n.is_finite()) {
                        v.push(format!("params.nu: nu must be < 1 (got {n})"));
                    }
                }
                if let Some(g) = p.gamma {
                    if !(0.0..1.0).contains(&g) {
                        v.push(format!("params.gamma: gamma must be in [0,1) (got {g})"));
                    }
                }
                if let Some(b) = p.b {
                    if !(b > 0.0 && b.is_finite()) {
                        v.push(format!("params.b: b must be > 0 (got {b})"));
                    }
                }
            }
            Model::Legendre => {
                if p.delta.is_some() || p.nu.is_some() || p.gamma.is_some() || p.b.is_some() {
                    v.push("params: the legendre model takes no parameters".to_string());
                }
            }
        }
        match self.bc {
            BcConfig::Separated { alpha, beta } => {
                for (name, x) in [("alpha", alpha), ("beta", beta)] {
                    if !(0.0..PI).contains(&x) {
                        v.push(format!("bc.{name}: {name} must be in [0,pi) (got {x})"));
                    }
                }
            }
            BcConfig::Coupled { phi, r } => {
                if !(0.0..PI).contains(&phi) {
                    v.push(format!("bc.phi: phi must be in [0,pi) (got {phi})"));
                }
                let det = r[0] * r[3] - r[1] * r[2];
                if !det.is_finite() || (det - 1.0).abs() > 1e-12 {
                    v.push(format!("bc.R: R must be unimodular (det R = {det})"));
                }
            }
            BcConfig::Preset { name } => {
                let ok = matches!(
                    (self.model, name),
                    (_, PresetName::Friedrichs)
                        | (Model::Legendre, PresetName::Periodic)
                        | (Model::Bessel, PresetName::Krein)
                        | (Model::Bessel, PresetName::Worked)
                );
                if !ok {
                    v.push(format!("bc.name: preset {name:?} is not defined for model {:?}", self.model));
                }
                if self.model == Model::Bessel && name == PresetName::Worked && p.gamma.unwrap_or(0.0) != 0.0 {
                    v.push("bc.name: the worked extension requires gamma = 0".to_string());
                }
            }
        }
        let o = &self.options;
        if let Some(psi) = o.psi {
            if !(psi > PI / 2.0 && psi < PI) {
                v.push(format!("options.psi: psi must be in (pi/2, pi) (got {psi})"));
            }
        }
        if let Some(c) = o.c_split {
            if !(c > 0.0 && c.is_finite()) {
                v.push(format!("options.C: C must be > 0 (got {c})"));
            }
        }
        if let Some(n) = o.order {
            if self.model == Model::Legendre && n > 12 {
                v.push(format!("options.N: N must be <= 12 for legendre (got {n})"));
            }
            if n > 30 {
                v.push(format!("options.N: N must be <= 30 (got {n})"));
            }
        }
        if let Some(n) = o.n_max {
            if !(1..=20).contains(&n) {
                v.push(format!("options.n_max: n_max must be in 1..=20 (got {n})"));
            }
        }
        if o.count == Some(0) {
            v.push("options.count: count must be positive".to_string());
        }
        if let Some(s) = &o.s {
            if s.is_empty() || s.iter().any(|x| !x.is_finite()) {
                v.push("options.s: s must be a nonempty list of finite numbers".to_string());
            }
        }
        if let Some(lb) = o.lower_bound {
            if !lb.is_finite() || lb > 0.0 {
                v.push(format!("options.lower_bound: lower_bound must be finite and <= 0 (got {lb})"));
            }
        }
        for (name, t) in [("abs_tol", o.abs_tol), ("rel_tol", o.rel_tol)] {
            if let Some(t) = t {
                if !(t > 0.0 && t < 1.0) {
                    v.push(format!("options.{name}: {name} must be in (0,1) (got {t})"));
                }
            }
        }
        if v.is_empty() {
            Ok(())
        } else {
            Err(ConfigError::Validation(v))
        }
    }
}
