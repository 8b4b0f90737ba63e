//! Command layer for the `abplates` binary: run configuration, the five
//! subcommands, path-file parsing and CSV/JSON rendering.
//!
//! Exit status contract: 0 on success, 2 for domain or configuration errors
//! (including unreadable or malformed inputs), 3 when a sum or quadrature did
//! not reach its tolerance and `--allow-partial` was not given.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod pathfile;

pub use commands::{cmd_coulomb, cmd_field, cmd_induced, cmd_loop, cmd_phase_curve, execute, run};
pub use config::{Format, Job, RunConfig, Sweep};
pub use error::CliError;
pub use output::{Cell, Table, SCHEMA_VERSION};
