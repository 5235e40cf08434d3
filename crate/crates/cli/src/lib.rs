//! The `dvad` pipeline: split a novel into chapters, pull out quoted
//! dialogue, clean it, score it against a VAD lexicon and draw the results.

pub mod config;
pub mod error;
pub mod report;
pub mod stages;

pub use config::{Overrides, RunConfig};
pub use error::{CliError, Result};
pub use report::RunReport;
pub use stages::{cmd_all, cmd_chart, cmd_clean, cmd_cloud, cmd_extract, cmd_freq, cmd_score, cmd_split};
