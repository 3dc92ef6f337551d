//! Deterministic serialization of run results as JSON, CSV or text.
//!
//! Floats are written with 17 significant digits (`{:.16e}`); non-finite
//! values become `null`.  Object keys are written in sorted order.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::config::ProblemConfig;
use crate::run::{Command, RunOutput};

/// Version of the JSON output schema.
pub const SCHEMA_VERSION: &str = "1.0";

/// Output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Versioned JSON document.
    Json,
    /// Comma-separated table.
    Csv,
    /// Human-readable sections.
    Text,
}

/// Formatting failure (a format that does not apply to the command).
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct EmitError(pub String);

/// Formats a float with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

fn write_json(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    let pad_in = "  ".repeat(indent + 1);
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_f64() {
                out.push_str(&fmt_f64(n.as_f64().unwrap_or(f64::NAN)));
            } else {
                out.push_str(&n.to_string());
            }
        }
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(a) => {
            if a.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                out.push_str(&pad_in);
                write_json(x, indent + 1, out);
                if i + 1 < a.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad);
            out.push(']');
        }
        Value::Object(m) => {
            if m.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                out.push_str(&pad_in);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_json(x, indent + 1, out);
                if i + 1 < m.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad);
            out.push('}');
        }
    }
}

/// Serializes a JSON value with the fixed float format.
pub fn to_json_string(v: &Value) -> String {
    let mut s = String::new();
    write_json(v, 0, &mut s);
    s.push('\n');
    s
}

/// The full JSON document {schema_version, command, config_echo, results, diagnostics}.
pub fn document(cfg: &ProblemConfig, out: &RunOutput) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": out.command.name(),
        "config_echo": serde_json::to_value(cfg).expect("config serializes"),
        "results": Value::Object(out.results.clone()),
        "diagnostics": out.diagnostics,
    })
}

fn cell(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => fmt_f64(n.as_f64().unwrap_or(f64::NAN)),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn re_im(v: &Value) -> (String, String) {
    (cell(&v["re"]), cell(&v["im"]))
}

fn csv(out: &RunOutput) -> Result<String, EmitError> {
    let mut s = String::new();
    match out.command {
        Command::Eigs => {
            s.push_str("index,lambda,multiplicity\n");
            for row in out.results["eigenvalues"]["table"].as_array().into_iter().flatten() {
                let _ = writeln!(s, "{},{},{}", cell(&row["index"]), cell(&row["lambda"]), cell(&row["multiplicity"]));
            }
        }
        Command::Zeta => {
            s.push_str("s_re,s_im,value_re,value_im,abs_error\n");
            for row in out.results["zeta"].as_array().into_iter().flatten() {
                let (sr, si) = re_im(&row["s"]);
                let (vr, vi) = re_im(&row["value"]);
                let _ = writeln!(s, "{sr},{si},{vr},{vi},{}", cell(&row["abs_error"]));
            }
        }
        Command::ZetaInt => {
            s.push_str("n,series_re,series_im,closed_re,closed_im,abs_difference\n");
            for row in out.results["zeta_int"]["rows"].as_array().into_iter().flatten() {
                let (ar, ai) = re_im(&row["series"]);
                let (cr, ci) = if row.get("closed_form").is_some() { re_im(&row["closed_form"]) } else { (String::new(), String::new()) };
                let _ = writeln!(s, "{},{ar},{ai},{cr},{ci},{}", cell(&row["n"]), cell(row.get("abs_difference").unwrap_or(&Value::Null)));
            }
        }
        Command::Charfn | Command::Trace => {
            s.push_str("z_re,z_im,value_re,value_im\n");
            for row in out.results["samples"]["rows"].as_array().into_iter().flatten() {
                let (zr, zi) = re_im(&row["z"]);
                let (vr, vi) = re_im(&row["value"]);
                let _ = writeln!(s, "{zr},{zi},{vr},{vi}");
            }
        }
        Command::Coeffs | Command::Report => {
            return Err(EmitError(format!("csv output is not available for '{}'; use json or text", out.command.name())))
        }
    }
    Ok(s)
}

fn complex_text(v: &Value) -> String {
    let (r, i) = re_im(v);
    format!("{r} + {i}i")
}

fn text(out: &RunOutput) -> String {
    let mut s = String::new();
    let r = &out.results;
    if let Some(e) = r.get("eigenvalues") {
        let _ = writeln!(s, "Eigenvalues");
        let _ = writeln!(s, "  zero multiplicity: {}", cell(&e["zero_multiplicity"]));
        for row in e["table"].as_array().into_iter().flatten() {
            let _ = writeln!(s, "  {:>4}  {}  (multiplicity {})", cell(&row["index"]), cell(&row["lambda"]), cell(&row["multiplicity"]));
        }
        s.push('\n');
    }
    if let Some(z) = r.get("zeta_int") {
        let _ = writeln!(s, "Zeta at positive integers (m0 = {})", cell(&z["m0"]));
        for row in z["rows"].as_array().into_iter().flatten() {
            let closed = row.get("closed_form").map(complex_text).unwrap_or_else(|| "n/a".into());
            let _ = writeln!(s, "  n = {}  series {}  closed form {}", cell(&row["n"]), complex_text(&row["series"]), closed);
        }
        s.push('\n');
    }
    if let Some(z) = r.get("zeta") {
        let _ = writeln!(s, "Zeta");
        for row in z.as_array().into_iter().flatten() {
            let _ = writeln!(
                s,
                "  s = {}  zeta = {}  +/- {}  [{}]",
                cell(&row["s"]["re"]),
                complex_text(&row["value"]),
                cell(&row["abs_error"]),
                cell(&row["method"])
            );
        }
        s.push('\n');
    }
    if let Some(z) = r.get("samples") {
        let _ = writeln!(s, "Samples of {}", cell(&z["quantity"]));
        for row in z["rows"].as_array().into_iter().flatten() {
            let _ = writeln!(s, "  z = {}  value = {}", complex_text(&row["z"]), complex_text(&row["value"]));
        }
        s.push('\n');
    }
    if let Some(c) = r.get("coeffs") {
        let _ = writeln!(s, "Coefficients");
        if let Value::Object(m) = c {
            for (k, v) in m {
                let _ = writeln!(s, "  {k}: {}", compact(v));
            }
        }
        s.push('\n');
    }
    if let Some(p) = r.get("poles") {
        let _ = writeln!(s, "Poles");
        let _ = writeln!(s, "  residue at s = 1/2: c/(2pi) = {}  (c = {})", cell(&p["residue_at_half"]), cell(&p["weyl_c"]));
        for x in p["singularities"].as_array().into_iter().flatten() {
            let _ = writeln!(s, "  {} at s = {}", cell(&x["kind"]), cell(&x["location"]));
        }
        s.push('\n');
    }
    if !out.diagnostics.is_empty() {
        let _ = writeln!(s, "Diagnostics");
        for d in &out.diagnostics {
            let _ = writeln!(s, "  {d}");
        }
    }
    s
}

fn compact(v: &Value) -> String {
    match v {
        Value::Array(a) => a.iter().map(compact).collect::<Vec<_>>().join(", "),
        Value::Object(m) if m.contains_key("re") && m.contains_key("im") && m.len() == 2 => complex_text(v),
        Value::Object(m) => {
            let parts: Vec<String> = m.iter().map(|(k, x)| format!("{k}={}", compact(x))).collect();
            format!("({})", parts.join(" "))
        }
        other => cell(other),
    }
}

/// Serializes a run in the requested format.
pub fn emit_report(cfg: &ProblemConfig, out: &RunOutput, format: Format) -> Result<String, EmitError> {
    match format {
        Format::Json => Ok(to_json_string(&document(cfg, out))),
        Format::Csv => csv(out),
        Format::Text => Ok(text(out)),
    }
}
