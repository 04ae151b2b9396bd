//! Monte Carlo engine, report records and the experiment suites.

pub mod engine;
pub mod report;
pub mod stats;
mod suites;

pub use engine::{run_observations, run_trials, Merge, Observation, RunConfig, Schema, Tally, BLOCK_TRIALS};
pub use report::{EstimateReport, Format, ReportTable, COLUMNS, TOOL, VERSION};
pub use stats::{log_log_fit, CompensatedSum, Estimate, Moments, RatioMoments, Z_99};
pub use suites::*;
