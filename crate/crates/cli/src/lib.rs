//! Configuration parsing and experiment orchestration behind the `qcorr`
//! binary.

pub mod config;
pub mod error;
pub mod experiments;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

pub use config::{parse_config, Experiment, RunConfig, StateKind};
pub use error::{CliError, ConfigError};
pub use experiments::{format_number, run_experiment, RunOutput};

/// Reads the config, runs the experiment and writes the CSV to `out`, the
/// config's `output` key, or stdout. Returns the process exit code: 0 on
/// success, 1 for configuration or I/O errors, 2 for numerical failures
/// (including optimizer refinements that did not converge; their CSV is
/// still written).
pub fn execute(experiment: Experiment, config_path: &Path, out: Option<PathBuf>) -> i32 {
    match try_execute(experiment, config_path, out) {
        Ok(warnings) if warnings.is_empty() => 0,
        Ok(warnings) => {
            for w in warnings {
                eprintln!("qcorr: warning: {w}");
            }
            2
        }
        Err(e) => {
            eprintln!("qcorr: {e}");
            e.exit_code()
        }
    }
}

fn try_execute(experiment: Experiment, config_path: &Path, out: Option<PathBuf>) -> Result<Vec<String>, CliError> {
    let text = fs::read_to_string(config_path).map_err(|source| CliError::Io {
        path: config_path.to_path_buf(),
        source,
    })?;
    let cfg = parse_config(&text)?;
    if let Some(named) = cfg.experiment {
        if named != experiment {
            return Err(ConfigError::invalid(
                "experiment",
                format!("config names `{named}` but `{experiment}` was requested"),
            )
            .into());
        }
    }
    let run = run_experiment(&cfg, experiment)?;
    match out.or_else(|| cfg.output.clone()) {
        Some(path) => fs::write(&path, &run.csv).map_err(|source| CliError::Io { path, source })?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(run.csv.as_bytes()).map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            })?;
        }
    }
    Ok(run.warnings)
}
