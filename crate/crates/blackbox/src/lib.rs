//! Std companion to `blackbox-core`: agent drivers and benchmark runs, the
//! HTTP session service, and report formats.

pub mod harness;
pub mod service;

pub use harness::{run_benchmark, run_session, BenchmarkConfig, BenchmarkRun, Driver};
