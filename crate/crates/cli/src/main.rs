//! `slzeta <command> --config <file> [--s <list>] [--count <n>] [--order <N>]
//! [--psi <rad>] [--format json|csv|text] [--out <file>]`
//!
//! Exit codes: 0 success, 2 validation failure, 3 numerical failure.
//! Diagnostics go to stderr; stdout (or `--out`) carries only the result.

use std::process::ExitCode;

use clap::Parser;

use slzeta_cli::{emit_report, load_problem, run, Command, ConfigError, Format, RunError};

#[derive(Debug, Parser)]
#[command(name = "slzeta", version, about = "Spectral zeta functions of quasi-regular Sturm-Liouville operators")]
struct Cli {
    /// Command to run.
    #[arg(value_enum)]
    command: Command,
    /// Configuration file, or an inline JSON document.
    #[arg(long)]
    config: String,
    /// Comma-separated real s values (overrides options.s).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    s: Option<Vec<f64>>,
    /// Number of eigenvalues (overrides options.count).
    #[arg(long)]
    count: Option<usize>,
    /// Asymptotic order N (overrides options.N).
    #[arg(long)]
    order: Option<usize>,
    /// Ray angle Psi in radians (overrides options.psi).
    #[arg(long)]
    psi: Option<f64>,
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the result to this file instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

fn init_workers() {
    if let Ok(v) = std::env::var("SLZETA_MAX_WORKERS") {
        match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => {
                if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                    eprintln!("warning: could not size the worker pool: {e}");
                }
            }
            _ => eprintln!("warning: ignoring SLZETA_MAX_WORKERS = {v:?} (expected a positive integer)"),
        }
    }
}

fn execute(cli: &Cli) -> Result<String, RunError> {
    let mut cfg = load_problem(&cli.config)?;
    if let Some(s) = &cli.s {
        cfg.options.s = Some(s.clone());
    }
    if cli.count.is_some() {
        cfg.options.count = cli.count;
    }
    if cli.order.is_some() {
        cfg.options.order = cli.order;
    }
    if cli.psi.is_some() {
        cfg.options.psi = cli.psi;
    }
    cfg.validate()?;
    let out = run(&cfg, cli.command)?;
    for d in &out.diagnostics {
        eprintln!("note: {d}");
    }
    emit_report(&cfg, &out, cli.format).map_err(|e| RunError::Config(ConfigError::Validation(vec![e.0])))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_workers();
    match execute(&cli) {
        Ok(text) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, text) {
                    eprintln!("error: cannot write {path}: {e}");
                    return ExitCode::from(3);
                }
            } else {
                print!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
