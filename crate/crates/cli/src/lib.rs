//! Front end for the workspace: subcommands, JSON/CSV reports and the acceptance matrix.

pub mod accept;
pub mod commands;
pub mod config;
pub mod report;

pub use accept::{Acceptance, Check, CriterionOutcome, KNOWN_FAILURES};
pub use commands::{run, Session};
pub use config::{Cli, Command, Profile};
pub use report::{CliError, Report, Verdict};
