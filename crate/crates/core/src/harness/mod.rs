//! Convergence experiments: configuration, the reproduction pipelines,
//! log-log slope fits and CSV output.

mod config;
mod csv;
mod experiment;
mod fit;

pub use config::{ExperimentConfig, ExperimentKind, DEFAULT_LAMBDA_CAP};
pub use csv::{emit_csv, write_csv};
pub use experiment::{
    build_operator, jump_function, run_experiment, run_experiment_with, ConvergenceReport, EigenRow,
};
pub use fit::{fit_slope, FLOOR};
