//! Library side of the `dpml` command-line tool.
//!
//! Each subcommand is a plain function over parsed inputs so the binary, the
//! integration tests and the acceptance suite drive the same code.
//!
//! | status | meaning |
//! |---|---|
//! | 0 | success |
//! | 1 | `verify` finished and the closed form missed the tolerance |
//! | 2 | malformed config, matrix file or argument |
//! | 3 | a series diverged under the truncation policy |
//! | 4 | any other numerical or I/O failure |

pub mod commands;
pub mod config;
pub mod error;
pub mod table;

pub use commands::{run, Cli, Command, Method};
pub use config::SystemConfig;
pub use error::CliError;
pub use table::GridTable;
