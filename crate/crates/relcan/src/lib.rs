//! Experiment harness around `relcan-core`: the end-to-end pipeline, JSONL
//! experiment records, seeded batch grids, re-validation, conjecture reports
//! and Betti-table exports.

pub mod batch;
pub mod check;
pub mod error;
pub mod pipeline;
pub mod record;
pub mod report;
pub mod tables;

pub use error::HarnessError;
pub use pipeline::{run_pipeline, PipelineOptions};
pub use record::ExperimentRecord;
