//! Batch front-end for `skmeans-core`: run records, the clustering pipeline
//! and the benchmark harness behind the `skmeans` binary.

pub mod bench;
pub mod record;
pub mod stats;

pub use bench::{load_suite, run_suite, BenchRow, Overrides, SuiteEntry, SuiteResult, Summary, SummaryRow};
pub use record::{cluster_dataset, run_on_data, ClusterOutcome, RunRecord, Threshold};
