//! File formats, parallel sweeps and the `hurwitz` command-line tool on top of `hurwitz-core`.

pub mod commands;
pub mod decimal;
pub mod format;
pub mod parallel;

pub use commands::{run, Cli, Report};
