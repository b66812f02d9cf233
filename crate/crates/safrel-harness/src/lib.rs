//! Experiment driver for the safrel stress-testing agent.
//!
//! Reproduces the evaluation scenarios (initial convergence on a single SUT,
//! policy transfer across homogeneous and heterogeneous SUT populations with
//! a paired random-stress baseline, and a learning-parameter sensitivity
//! sweep) and emits seeded, reproducible CSV reports.

pub mod baseline;
pub mod config;
pub mod error;
pub mod report;
pub mod scenario;

pub use baseline::run_baseline;
pub use config::{epsilon_desc, parse_epsilon, Scenario, ScenarioConfig};
pub use error::HarnessError;
pub use report::{
    emit_report, read_per_sut_csv, read_summary_csv, summarize, RunArtifacts, ScenarioReport,
    SummaryRow, SutRow,
};
pub use scenario::{run_scenario, SWEEP_GRID, SWEEP_REPLICATIONS};
