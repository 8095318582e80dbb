//! `microcavity`: spectra, sweeps, field images and phase-space maps of
//! circular dielectric cavities, written as CSV, JSON or PGM.
//!
//! Exit status: 0 on success, 1 when any output row carries an error,
//! 2 on invalid arguments or a fatal failure.

mod args;
mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use args::Cli;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] microcavity::Error),

    #[error("cannot write {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(errors) => {
            eprintln!("microcavity: {errors} row(s) failed; see the error column");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("microcavity: {e}");
            ExitCode::from(2)
        }
    }
}
