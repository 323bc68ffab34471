//! Report model and subcommands behind the `weylspin` binary.

pub mod commands;
pub mod report;

pub use commands::{cmd_catalog, cmd_check, cmd_selftest, CheckConfig, InputError, SelftestConfig};
pub use report::{Record, Report, Status};
