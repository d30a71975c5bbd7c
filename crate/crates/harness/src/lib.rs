//! Command-line harness: local and TCP protocol runs, CRS inspection, and
//! the statistical estimator suites.

pub mod config;
pub mod error;
pub mod report;
pub mod runner;
pub mod suites;

pub use config::RunConfig;
pub use error::{HarnessError, Result};
pub use report::TrialReport;
