//! Command-line front end for `aperylab-core`: run configuration, the
//! on-disk sequence cache, JSON report formats, one driver per subcommand
//! and the acceptance self-test.

pub mod cache;
pub mod commands;
pub mod config;
pub mod error;
pub mod formats;
pub mod selftest;

pub use cache::{Cache, CacheEntry, CacheKey};
pub use commands::Report;
pub use config::{Output, RunConfig};
pub use error::{CliError, Result};
