use std::path::PathBuf;
use std::process::ExitCode;

use clap::{CommandFactory, FromArgMatches, Parser};
use qcorr_cli::{config::keys_help, execute, Experiment};

/// Correlations, witness, decoherence and interferometer experiments on
/// two-qubit NMR deviation states, written as CSV.
#[derive(Parser, Debug)]
#[command(name = "qcorr", version)]
struct Args {
    /// entropy_check | discord | dynamics | witness | mz_sweep | discord_visibility
    experiment: Experiment,

    /// `key = value` configuration file
    #[arg(long)]
    config: PathBuf,

    /// CSV destination (overrides the `output` key; stdout when neither is set)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let matches = Args::command().after_help(keys_help()).get_matches();
    let args = match Args::from_arg_matches(&matches) {
        Ok(a) => a,
        Err(e) => e.exit(),
    };
    let code = execute(args.experiment, &args.config, args.out);
    ExitCode::from(code as u8)
}
