//! Configuration, closed-loop runs, controller comparison and export.

mod config;
pub mod library;
mod report;
mod run;

pub use config::{load_config, ScenarioConfig, H_REF};
pub use report::{
    compare_controllers, export_csv, summary_table, write_csv, write_summary_csv, Comparison, SummaryRow,
    CSV_COLUMNS,
};
pub use run::{run_scenario, run_scenario_with, scenario_wind, RunResult, RunStats, RunStatus, Sample};

use std::path::Path;

use crate::error::{Error, Result};

/// Reads a document from disk, or from the built-in library for `builtin:<name>` paths.
pub fn read_source(path: &Path) -> Result<String> {
    let text = path.to_string_lossy();
    if let Some(name) = text.strip_prefix(library::BUILTIN_PREFIX) {
        return library::builtin(name)
            .map(str::to_owned)
            .ok_or_else(|| Error::FileNotFound(path.to_path_buf()));
    }
    std::fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::FileNotFound(path.to_path_buf()),
        _ => Error::Io {
            path: path.to_path_buf(),
            source: e,
        },
    })
}
