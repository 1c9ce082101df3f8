//! Command-line front end for `unitfrac-core`: argument parsing, record
//! formats, the checkpointed range driver and the benchmark harness.
//!
//! Every command writes to caller-supplied streams, so the binary and the
//! tests drive the same code.

pub mod args;
pub mod bench;
pub mod checkpoint;
pub mod commands;
pub mod error;
pub mod records;
pub mod verify;
pub mod width;

pub use args::Cli;
pub use commands::run;
pub use error::CliError;

/// Environment variable capping the number of worker threads.
pub const MAX_WORKERS_ENV: &str = "UNITFRAC_MAX_WORKERS";
