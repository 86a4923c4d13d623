//! Standard-library companion of `regspec-core`: CSV/JSON formats, the
//! `regspec` command-line tool and a multi-threaded benchmark runner.

pub mod bench;
pub mod cli;
pub mod error;
pub mod format;
pub mod io;
pub mod report;

pub use error::{CliError, CliResult, ExitKind};
pub use regspec_core as core;
