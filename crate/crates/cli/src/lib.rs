//! Configuration, dispatch and output for the `cloakwave` command.

pub mod config;
pub mod error;
pub mod run;

pub use config::{Experiment, Overrides, RunConfig};
pub use error::CliError;
pub use run::{execute, Report, RESULTS_HEADER};

/// Validates, runs on `threads` workers (rayon's default when `None`) and
/// writes the report into the configured output directory. Nothing is
/// written when validation or the computation fails.
pub fn run(cfg: &RunConfig, threads: Option<usize>) -> Result<Report, CliError> {
    cfg.validate()?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        if n == 0 {
            return Err(CliError::Config("--threads must be at least 1".into()));
        }
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| CliError::Io(e.to_string()))?;
    let report = pool.install(|| execute(cfg))?;
    report.write(&cfg.output.dir)?;
    Ok(report)
}
