//! Library surface of the command-line driver: run configuration, report
//! schema and emitters, and the per-command orchestration used by both the
//! binary and the acceptance suite.

pub mod config;
pub mod report;
pub mod run;
