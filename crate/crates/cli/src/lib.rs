//! Command-line front end of the `slzeta` library: configuration loading,
//! command dispatch and report serialization.

pub mod config;
pub mod emit;
pub mod run;

pub use config::{load_problem, ConfigError, ProblemConfig};
pub use emit::{emit_report, Format};
pub use run::{run, Command, RunError, RunOutput};
