//! Verification suites over the `milnor-ktk-core` models and the report
//! format written by the `verify` binary.

pub mod config;
pub mod report;
pub mod suites;

use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;

pub use config::{RunConfig, SuiteId};
pub use report::{CheckParams, CheckResult, Report, Status, Summary};
pub use suites::{run_suite, Context};

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error(transparent)]
    Core(#[from] milnor_ktk_core::Error),
}

/// Runs the selected suites. Suites run in parallel; the report is sorted.
pub fn run(config: &RunConfig) -> Result<Report, VerifyError> {
    let ctx = Context::new(config)?;
    let results: Vec<CheckResult> =
        config.selected().par_iter().flat_map_iter(|&id| run_suite(id, &ctx)).collect();
    let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    Ok(Report::new(config.clone(), results, timestamp))
}
