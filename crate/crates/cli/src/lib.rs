//! Scenario runner for the hyperspinor experiments: configuration, the
//! scenario registry and report emission.

pub mod config;
pub mod error;
pub mod report;
pub mod scenarios;

use std::collections::BTreeMap;
use std::path::Path;

use config::{resolve, ConfigFile, Format, Invocation};
use error::{CliError, CliResult};
use report::Report;
use scenarios::Scenario;

pub const THREADS_ENV: &str = "HYPERSPINOR_THREADS";

/// Cap the global rayon pool from `HYPERSPINOR_THREADS` when it is set.
pub fn init_threads() -> CliResult<()> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|t| *t > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got '{value}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

pub fn lookup(name: &str) -> CliResult<&'static Scenario> {
    scenarios::find(name).ok_or_else(|| {
        let known: Vec<&str> = scenarios::all().iter().map(|s| s.name).collect();
        CliError::Usage(format!("unknown scenario '{name}'; known: {}", known.join(", ")))
    })
}

/// Scenario defaults, then the config file, then flags.
pub fn invocation(
    scenario: &Scenario,
    config: Option<&Path>,
    flags: BTreeMap<String, String>,
) -> CliResult<Invocation> {
    let mut layers = Vec::new();
    if let Some(path) = config {
        layers.push(ConfigFile::load(path)?.for_scenario(scenario.name));
    }
    layers.push(flags);
    resolve(scenario.defaults(), &layers)
}

pub fn render(report: &Report, format: Format) -> CliResult<String> {
    match format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json(),
    }
}

pub fn write_output(text: &str, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Output(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
