//! Experiment harness for the modified-Jacobi kernel library: convergence
//! studies against the sine/Bessel limits, rate fitting, and CSV reports.

pub mod config;
pub mod csv;
pub mod studies;

pub use config::{load_config, load_h, ExperimentConfig, GridSpec, StudyKind};
pub use csv::{emit_csv, render_csv};
pub use studies::{
    fit_convergence_rate, run_study, ConvergenceReport, ErrorRow, GapRow, RateFit,
};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    /// Bad flags, config files, paths: exit code 2.
    #[error("config error: {0}")]
    Config(String),
    /// Numerical failure inside the core library: exit code 3.
    #[error("numerical failure: {0}")]
    Numeric(#[from] mjue_core::Error),
    /// Study could not produce a result (degenerate fit input, empty grid
    /// after node exclusion): exit code 3.
    #[error("study failed: {0}")]
    Study(String),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) => 2,
            HarnessError::Numeric(_) | HarnessError::Study(_) => 3,
        }
    }
}
