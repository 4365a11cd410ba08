//! Command-line front end: argument and config parsing, command dispatch and
//! CSV/JSON output.

mod args;
mod commands;
mod output;
mod sweep;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde_json::json;

pub use args::{
    parse_args, parse_args_with_default_config, CliError, Command, Domain, Format, LevitationModel, Method, RunConfig,
    CONFIG_ENV,
};
pub use output::{Cell, Table};
pub use sweep::{LayerRange, Sweep};

use crate::scenarios::REGISTRY_VERSION;
use crate::{Error, Result};

/// Summary of a finished run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub rows: usize,
    pub failed_rows: usize,
}

/// Runs a validated command and writes its table to `cfg.out` or stdout.
/// Failed rows are reported on stderr and kept in the output as NaN.
pub fn run(cfg: &RunConfig) -> Result<RunOutcome> {
    let started = Instant::now();
    let table = compute(cfg)?;
    let io_err = |e: io::Error| Error::InvalidParameter(format!("cannot write output: {e}"));
    let mut sink: Box<dyn Write> = match &cfg.out {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(io_err)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match cfg.format {
        Format::Csv => table.write_csv(&mut sink)?,
        Format::Json => {
            let stamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs_f64()).unwrap_or(0.0);
            let metadata = json!({
                "tol": cfg.tol,
                "points": cfg.points,
                "registry_version": REGISTRY_VERSION,
                "crate_version": env!("CARGO_PKG_VERSION"),
                "config": cfg,
                "started_unix_s": stamp,
                "elapsed_s": started.elapsed().as_secs_f64(),
            });
            let doc = table.to_json(cfg.command.name(), metadata);
            serde_json::to_writer_pretty(&mut sink, &doc)
                .map_err(|e| Error::InvalidParameter(format!("cannot write JSON: {e}")))?;
            writeln!(sink).map_err(io_err)?;
        }
    }
    sink.flush().map_err(io_err)?;
    for (row, message) in &table.failures {
        eprintln!("row {row} failed: {message}");
    }
    Ok(RunOutcome { rows: table.rows.len(), failed_rows: table.failures.len() })
}

/// Computes the table of a command without writing it.
pub fn compute(cfg: &RunConfig) -> Result<Table> {
    commands::execute(cfg)
}

/// Entry point of the binary. Exit codes: 0 success, 1 some rows failed or
/// the run aborted, 2 invalid command line or config.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match parse_args(args) {
        Ok(cfg) => cfg,
        Err(CliError::Clap(e)) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
        Err(e) => {
            eprintln!("{e}");
            return 2;
        }
    };
    match run(&cfg) {
        Ok(outcome) if outcome.failed_rows == 0 => 0,
        Ok(outcome) => {
            eprintln!("{} of {} rows failed", outcome.failed_rows, outcome.rows);
            1
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
