//! `spw`: exact sum-product workbench.
//!
//! Exit codes: 0 success, 1 exact-check violation, 2 usage or input error,
//! 3 guard exceeded. Set `SPW_GUARD_OVERRIDE=1` to lift the size guards at
//! your own risk.

mod args;
mod commands;
mod error;
mod input;
mod render;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use error::CliError;

fn emit(cli: &Cli) -> Result<bool, CliError> {
    let outcome = commands::run(cli)?;
    let bytes = outcome.render(cli.format)?;
    match &cli.out {
        Some(path) => fs::write(path, bytes)?,
        None => std::io::stdout().lock().write_all(&bytes)?,
    }
    Ok(outcome.violation)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match emit(&cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("spw: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
