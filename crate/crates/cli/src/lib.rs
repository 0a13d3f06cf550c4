//! Command-line front end for `hypercal-core`.
//!
//! Every invocation prints one report document (JSON by default). Exit codes
//! are in [`exit`].

pub mod cli;
pub mod commands;
pub mod error;
pub mod json;
pub mod model_file;
pub mod report;

use std::time::Instant;

use clap::Parser;
use serde_json::json;

use crate::cli::{Cli, Command, Format};
use crate::commands::{Done, MetricSource};
use crate::error::CliError;
use crate::report::{witness, Report};

pub mod exit {
    pub const PASS: u8 = 0;
    /// A property or validation check failed.
    pub const FAILURE: u8 = 1;
    /// Verdicts differ from `--expect`.
    pub const EXPECT: u8 = 2;
    pub const PARSE: u8 = 3;
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Weights { .. } => "weights",
        Command::Hkt { .. } => "hkt",
        Command::Double { .. } => "double",
        Command::Psi { .. } => "psi",
        Command::Comass { .. } => "comass",
        Command::Cohomology { .. } => "cohomology",
        Command::Theta { .. } => "theta",
        Command::Report { .. } => "report",
        Command::Export { .. } => "export",
    }
}

pub fn dispatch(c: &Command) -> Result<Done, CliError> {
    match c {
        Command::Validate { model } => commands::validate(model),
        Command::Weights { model, degree } => commands::weights(model, *degree),
        Command::Hkt { model, metric, expect } => {
            commands::hkt(model, metric.as_ref().unwrap_or(&MetricSource::Attached), expect.map(Into::into))
        }
        Command::Double { model, output } => commands::double(model, output.as_deref()),
        Command::Psi { model } => commands::psi(model),
        Command::Comass { model, samples, seed } => commands::comass(model, *samples, *seed),
        Command::Cohomology { model, degree } => commands::cohomology(model, *degree),
        Command::Theta { model } => commands::theta(model),
        Command::Report { model, samples } => commands::full_report(model, *samples),
        Command::Export { model, output } => commands::export_model(model, output.as_deref()),
    }
}

pub(crate) fn error_json(e: &CliError) -> serde_json::Value {
    match e {
        CliError::Invalid { check, source } => json!({"kind": "invalid", "check": check, "witness": witness(source)}),
        CliError::Schema { at, message } => json!({"kind": "parse", "at": at, "message": message}),
        CliError::Io { path, message } => json!({"kind": "io", "path": path, "message": message}),
        CliError::Unsupported(m) => json!({"kind": "unsupported", "message": m}),
    }
}

fn error_report(command: &str, e: &CliError) -> Report {
    let mut r = Report::new(command);
    r.error = Some(error_json(e));
    r
}

/// Runs a parsed invocation, returning the rendered report and exit code.
pub fn execute(cli: &Cli) -> (String, u8) {
    let start = Instant::now();
    let name = command_name(&cli.command);
    let (mut report, code) = match dispatch(&cli.command) {
        Ok(Done { report, code }) => (report, code),
        Err(e) => (error_report(name, &e), e.exit_code()),
    };
    if cli.timings {
        report.timings = Some(json!({"total_ms": start.elapsed().as_secs_f64() * 1e3}));
    }
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
        Format::Text => report.to_text(),
    };
    (text, code)
}

pub fn run() -> u8 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::PARSE } else { exit::PASS };
            let _ = e.print();
            return code;
        }
    };
    let (text, code) = execute(&cli);
    print!("{text}");
    code
}
