//! Configuration-driven runs, reports and the `bpm` command line.

pub mod app;
pub mod checks;
pub mod config;
pub mod run;

pub use checks::{run_kernel_checks, CheckOutcome};
pub use config::CaseConfig;
pub use run::{emit_report, error_norm, run_case, CaseReport, ReportPaths};
