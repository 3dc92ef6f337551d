//! Command dispatch: builds the characteristic function of the configured
//! extension and delegates each command to the library.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use slzeta::bessel::{self, BesselParams, BesselTarget};
use slzeta::continuation::{assemble_zeta, zeta_unsubtracted, ContinuationPlan, SingularityKind, ZetaResult};
use slzeta::legendre::{self, ClosedFormTarget, LegendrePreset};
use slzeta::series::zeta_from_series;
use slzeta::slcore::{trace_resolvent, BoundaryCondition, CharFn, SpectralConstants};
use slzeta::specfun::rational_to_f64;
use slzeta::spectrum::{find_eigenvalues, zeta_direct_sum, SpectrumTable};
use slzeta::Error;

use crate::config::{BcConfig, ConfigError, Model, PresetName, ProblemConfig};

/// Commands of the command-line surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    /// Eigenvalues.
    Eigs,
    /// ζ(1..n) from the series recursion beside the reference closed forms.
    ZetaInt,
    /// ζ(s) on the s grid.
    Zeta,
    /// Samples of F(z).
    Charfn,
    /// Samples of the resolvent trace −F′(z)/F(z).
    Trace,
    /// Tables of asymptotic coefficients.
    Coeffs,
    /// Everything above plus a pole / branch-point summary.
    Report,
}

impl Command {
    /// Name as typed on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            Command::Eigs => "eigs",
            Command::ZetaInt => "zeta-int",
            Command::Zeta => "zeta",
            Command::Charfn => "charfn",
            Command::Trace => "trace",
            Command::Coeffs => "coeffs",
            Command::Report => "report",
        }
    }
}

/// Failures of a run, mapped to exit codes 2 and 3.
#[derive(Debug, thiserror::Error)]
pub enum RunError {
    /// Configuration or option problem (exit code 2).
    #[error(transparent)]
    Config(#[from] ConfigError),
    /// Numerical failure inside the library (exit code 3).
    #[error("{context}: {source}")]
    Numerical {
        /// What was being computed.
        context: String,
        /// Library error.
        source: Error,
    },
}

impl RunError {
    /// Process exit code.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            RunError::Numerical { .. } => 3,
        }
    }
}

fn num<T>(context: impl Into<String>, r: slzeta::Result<T>) -> Result<T, RunError> {
    r.map_err(|source| RunError::Numerical { context: context.into(), source })
}

/// Result of a command: the `results` object plus diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    /// Command that produced the output.
    pub command: Command,
    /// Named result sections.
    pub results: Map<String, Value>,
    /// Non-fatal remarks.
    pub diagnostics: Vec<String>,
}

/// A complex number as {re, im}.
pub fn cjson(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

/// Characteristic function and metadata of the configured extension.
struct Setup {
    cf: CharFn,
    sc: SpectralConstants,
    closed: Box<dyn Fn(usize) -> slzeta::Result<Complex64> + Send + Sync>,
    bessel: Option<BesselParams>,
    legendre_beta: Option<f64>,
}

fn setup(cfg: &ProblemConfig) -> Result<Setup, RunError> {
    match cfg.model {
        Model::Legendre => {
            let sc = legendre::spectral_constants();
            let (cf, target, beta) = match cfg.bc {
                BcConfig::Preset { name: PresetName::Friedrichs } => (
                    num("legendre friedrichs", legendre::char_fn_preset(LegendrePreset::Friedrichs))?,
                    ClosedFormTarget::Preset(LegendrePreset::Friedrichs),
                    Some(0.0),
                ),
                BcConfig::Preset { name: PresetName::Periodic } => (
                    num("legendre periodic", legendre::char_fn_preset(LegendrePreset::Periodic))?,
                    ClosedFormTarget::Preset(LegendrePreset::Periodic),
                    None,
                ),
                BcConfig::Preset { name } => {
                    return Err(ConfigError::Validation(vec![format!("bc.name: {name:?} is not a legendre preset")]).into())
                }
                _ => {
                    let bc = cfg.explicit_bc().expect("explicit boundary condition");
                    let beta = match bc {
                        BoundaryCondition::Separated { alpha, beta } if alpha == 0.0 => Some(beta),
                        _ => None,
                    };
                    (num("legendre characteristic function", legendre::char_fn_bc(&bc))?, ClosedFormTarget::Bc(bc), beta)
                }
            };
            Ok(Setup { cf, sc, closed: Box::new(move |n| legendre::zeta_closed_forms(target, n)), bessel: None, legendre_beta: beta })
        }
        Model::Bessel => {
            let p = cfg.bessel_params()?;
            let sc = bessel::spectral_constants(&p);
            let (cf, target) = match cfg.bc {
                BcConfig::Preset { name: PresetName::Friedrichs } => {
                    let bc = BoundaryCondition::Separated { alpha: 0.0, beta: 0.0 };
                    (num("bessel friedrichs", bessel::char_fn_bc(&p, &bc))?, BesselTarget::Bc(bc))
                }
                BcConfig::Preset { name: PresetName::Krein } => {
                    (num("bessel krein-von neumann", bessel::kvn_char_series(&p, bessel::SERIES_ORDER))?, BesselTarget::KreinVonNeumann)
                }
                BcConfig::Preset { name: PresetName::Worked } => (
                    num("bessel worked extension", bessel::char_fn_worked(&p))?,
                    BesselTarget::Bc(BoundaryCondition::Separated { alpha: PI / 2.0, beta: 0.0 }),
                ),
                BcConfig::Preset { name } => {
                    return Err(ConfigError::Validation(vec![format!("bc.name: {name:?} is not a bessel preset")]).into())
                }
                _ => {
                    let bc = cfg.explicit_bc().expect("explicit boundary condition");
                    (num("bessel characteristic function", bessel::char_fn_bc(&p, &bc))?, BesselTarget::Bc(bc))
                }
            };
            Ok(Setup {
                cf,
                sc,
                closed: Box::new(move |n| bessel::zeta_closed_forms(&p, target, n)),
                bessel: Some(p),
                legendre_beta: None,
            })
        }
    }
}

/// Runs one command.
pub fn run(cfg: &ProblemConfig, command: Command) -> Result<RunOutput, RunError> {
    cfg.validate()?;
    let st = setup(cfg)?;
    let mut out = RunOutput { command, results: Map::new(), diagnostics: Vec::new() };
    match command {
        Command::Eigs => {
            let table = eigs(cfg, &st)?;
            out.results.insert("eigenvalues".into(), spectrum_json(&table));
        }
        Command::ZetaInt => {
            out.results.insert("zeta_int".into(), zeta_int(cfg, &st, &mut out.diagnostics)?);
        }
        Command::Zeta => {
            out.results.insert("zeta".into(), zeta(cfg, &st, &mut out.diagnostics)?);
        }
        Command::Charfn | Command::Trace => {
            out.results.insert("samples".into(), samples(cfg, &st, command == Command::Trace)?);
        }
        Command::Coeffs => {
            out.results.insert("coeffs".into(), coeffs(cfg, &st, &mut out.diagnostics)?);
        }
        Command::Report => {
            let table = eigs(cfg, &st)?;
            out.results.insert("eigenvalues".into(), spectrum_json(&table));
            out.results.insert("zeta_int".into(), zeta_int(cfg, &st, &mut out.diagnostics)?);
            out.results.insert("zeta".into(), zeta(cfg, &st, &mut out.diagnostics)?);
            out.results.insert("coeffs".into(), coeffs(cfg, &st, &mut out.diagnostics)?);
            out.results.insert("poles".into(), poles(cfg, &st)?);
        }
    }
    Ok(out)
}

fn eigs(cfg: &ProblemConfig, st: &Setup) -> Result<SpectrumTable, RunError> {
    num("eigenvalue search", find_eigenvalues(&st.cf, &st.sc, cfg.count(), cfg.lower_bound()))
}

fn spectrum_json(t: &SpectrumTable) -> Value {
    let rows: Vec<Value> = t
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(i, e)| json!({ "index": i + 1, "lambda": e.lambda, "multiplicity": e.multiplicity }))
        .collect();
    json!({
        "zero_multiplicity": t.zero_multiplicity,
        "lower_bound": t.lower_bound,
        "count_requested": t.count_requested,
        "table": rows,
    })
}

fn zeta_int(cfg: &ProblemConfig, st: &Setup, diag: &mut Vec<String>) -> Result<Value, RunError> {
    let series = st.cf.small_z().ok_or_else(|| RunError::Numerical {
        context: "zeta-int".into(),
        source: Error::FormulaUnavailable("no small-z series attached".into()),
    })?;
    let n_max = cfg.n_max();
    let vals = num("series recursion", zeta_from_series(series, st.cf.m0(), n_max))?;
    let mut rows = Vec::new();
    for (i, v) in vals.iter().enumerate() {
        let n = i + 1;
        let mut row = Map::new();
        row.insert("n".into(), json!(n));
        row.insert("series".into(), cjson(*v));
        match (st.closed)(n) {
            Ok(c) => {
                row.insert("closed_form".into(), cjson(c));
                row.insert("abs_difference".into(), json!((c - v).norm()));
            }
            Err(e) => diag.push(format!("zeta-int n={n}: {e}")),
        }
        rows.push(Value::Object(row));
    }
    Ok(json!({ "m0": st.cf.m0(), "rows": rows }))
}

fn zeta_one(cfg: &ProblemConfig, st: &Setup, s: Complex64) -> slzeta::Result<(ZetaResult, &'static str)> {
    let mut plan = ContinuationPlan::new(cfg.psi(), cfg.c_split(), st.cf.m0())?;
    if let (Some(a), Some(r)) = (cfg.options.abs_tol, cfg.options.rel_tol) {
        plan = plan.with_tolerances(a, r);
    } else if let Some(a) = cfg.options.abs_tol {
        plan = plan.with_tolerances(a, plan.rel_tol);
    } else if let Some(r) = cfg.options.rel_tol {
        plan = plan.with_tolerances(plan.abs_tol, r);
    }
    if let Some(asym) = st.cf.asymptotics(cfg.psi(), cfg.order()) {
        return Ok((assemble_zeta(&plan, &st.cf, &asym?, s)?, "continued"));
    }
    if s.re > 0.5 && s.re < 1.0 {
        return Ok((zeta_unsubtracted(&plan, &st.cf, st.sc.c, s)?, "unsubtracted-integral"));
    }
    if s.re >= 1.0 {
        let table = find_eigenvalues(&st.cf, &st.sc, cfg.count().max(200), cfg.lower_bound())?;
        return Ok((zeta_direct_sum(&table, s, &st.sc)?, "direct-sum"));
    }
    Err(Error::FormulaUnavailable(
        "no asymptotic expansion is attached to this extension; only Re(s) > 1/2 is available".into(),
    ))
}

fn zeta(cfg: &ProblemConfig, st: &Setup, _diag: &mut [String]) -> Result<Value, RunError> {
    let s_list = cfg.s_list();
    let results: Vec<_> = s_list.par_iter().map(|&s| (s, zeta_one(cfg, st, Complex64::new(s, 0.0)))).collect();
    let mut rows = Vec::new();
    for (s, r) in results {
        let (z, method) = num(format!("zeta at s = {s}"), r)?;
        let nearest = z.region.nearest.map(|n| {
            json!({
                "location": n.location,
                "kind": match n.kind { SingularityKind::Pole => "pole", SingularityKind::BranchPoint => "branch-point" },
                "distance": n.distance,
            })
        });
        rows.push(json!({
            "s": cjson(Complex64::new(s, 0.0)),
            "value": cjson(z.value),
            "abs_error": z.abs_error_estimate,
            "method": method,
            "strip": [z.region.strip_lo, z.region.strip_hi],
            "nearest_singularity": nearest,
        }));
    }
    Ok(Value::Array(rows))
}

fn samples(cfg: &ProblemConfig, st: &Setup, trace: bool) -> Result<Value, RunError> {
    let zs = cfg.z_list();
    let vals: Vec<_> = zs
        .par_iter()
        .map(|&[re, im]| {
            let z = Complex64::new(re, im);
            (z, if trace { trace_resolvent(&st.cf, z) } else { st.cf.eval(z) })
        })
        .collect();
    let mut rows = Vec::new();
    for (z, v) in vals {
        let v = num(format!("{} at z = {z}", if trace { "trace" } else { "F" }), v)?;
        rows.push(json!({ "z": cjson(z), "value": cjson(v) }));
    }
    Ok(json!({ "quantity": if trace { "-F'(z)/F(z)" } else { "F(z)" }, "rows": rows }))
}

fn coeffs(cfg: &ProblemConfig, st: &Setup, diag: &mut Vec<String>) -> Result<Value, RunError> {
    let n = cfg.order();
    let psi = cfg.psi();
    let mut m = Map::new();
    match cfg.model {
        Model::Legendre => {
            let c = num("C_n table", legendre::c_coefficients(n.max(1)))?;
            let rows: Vec<Value> = c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, q)| json!({ "n": k, "exact": q.to_string(), "value": rational_to_f64(q) }))
                .collect();
            m.insert("C".into(), Value::Array(rows));
            match st.legendre_beta {
                Some(beta) => {
                    let a = num("asymptotic coefficients", legendre::asym_coeffs(beta, psi, n))?;
                    let mut om = Vec::new();
                    for j in 1..=n {
                        for k in 1..=j {
                            om.push(json!({ "n": j, "k": k, "exact": a.omega[j][k].to_string(), "value": a.omega_f64(j, k) }));
                        }
                    }
                    m.insert("omega".into(), Value::Array(om));
                    m.insert("lambda_shift".into(), cjson(a.lambda_shift));
                    let pc: Vec<Value> =
                        (1..=n).map(|j| json!({ "n": j, "coefficient": cjson(a.power_coefficient(j)) })).collect();
                    m.insert("power_coefficients".into(), Value::Array(pc));
                }
                None => diag.push("coeffs: omega table is defined for the separated alpha = 0 family only".into()),
            }
        }
        Model::Bessel => {
            let p = st.bessel.expect("bessel parameters");
            let a: Vec<Value> =
                bessel::hankel_coefficients(n).iter().enumerate().map(|(k, v)| json!({ "k": k, "value": v })).collect();
            m.insert("a_hankel".into(), Value::Array(a));
            if p.gamma() == 0.0 {
                let ba = num("abar coefficients", bessel::asym_coeffs(&p, psi, n))?;
                m.insert("mu".into(), cjson(ba.mu));
                let ab: Vec<Value> =
                    (1..=n).map(|j| json!({ "j": j, "value": cjson(ba.abar[j]) })).collect();
                m.insert("abar".into(), Value::Array(ab));
            } else {
                diag.push("coeffs: abar coefficients are defined for gamma = 0 only".into());
            }
        }
    }
    Ok(Value::Object(m))
}

fn poles(cfg: &ProblemConfig, st: &Setup) -> Result<Value, RunError> {
    let residue = st.sc.residue_at_half();
    let mut list = Vec::new();
    let mut strip = Value::Null;
    if let Some(asym) = st.cf.asymptotics(cfg.psi(), cfg.order()) {
        let asym = num("asymptotic expansion", asym)?;
        strip = json!([asym.strip_lower(), 1.0]);
        for (loc, kind) in asym.singular_points() {
            let kind = match kind {
                SingularityKind::Pole => "pole",
                SingularityKind::BranchPoint => "branch-point",
            };
            list.push(json!({ "location": loc, "kind": kind }));
        }
    } else {
        list.push(json!({ "location": 0.5, "kind": "pole" }));
    }
    Ok(json!({
        "weyl_c": st.sc.c,
        "residue_at_half": residue,
        "residue_formula": "c/(2*pi)",
        "strip": strip,
        "singularities": list,
    }))
}
