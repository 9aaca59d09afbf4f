// Copyright 2026 The cantorlab Authors
// SPDX-License-Identifier: Apache-2.0

//! The `cantorlab` command line.
//!
//! Every output starts with the tool version and the resolved configuration,
//! so a file can be regenerated from its own header. Settings come only from
//! flags; no environment variables are read.

pub mod args;
pub mod commands;
pub mod error;
pub mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::Cli;
use crate::commands::{execute, Context};
use crate::error::{CliError, CliResult};

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    init_logging(cli.verbose);
    match run_cli(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn init_logging(verbose: u8) {
    let level = match verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    let _ = env_logger::Builder::new()
        .filter_level(level)
        .format_timestamp(None)
        .try_init();
}

pub fn run_cli(cli: &Cli) -> CliResult<()> {
    let workers = match cli.workers {
        Some(0) => return Err(CliError::usage("--workers must be at least 1")),
        Some(k) => k,
        None => cantorlab_core::parallel::default_workers(),
    };
    let ctx = Context {
        guard_bits: cli.guard_bits,
        depth: cli.depth,
        workers,
    };
    let config = serde_json::to_value(cli).expect("config serializes");
    log::info!("config: {config}");
    let table = execute(&cli.command, &ctx)?;
    let text = output::render(&table, cli.format, &config);
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
