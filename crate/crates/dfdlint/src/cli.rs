//! Command-line entry points shared by the `dfdlint` binary and the tests.
//!
//! Exit codes: 0 when no errors were found (warnings allowed unless strict
//! mode), 1 when any error-severity diagnostic was reported (or any warning
//! under `--strict`), 2 on read or parse failure. Reports go to standard
//! output; parse errors and I/O failures go to the error stream.

use std::fs;
use std::io::Write;
use std::path::Path;

use clap::ValueEnum;

use crate::consistency::check_project;
use crate::diagnostics::{render_structured, render_text};
use crate::dot::export_dot;
use crate::dsl::{from_json, parse_project, ParseError};
use crate::model::Project;

/// Process exit status of one CLI invocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    /// No errors (warnings permitted unless strict mode).
    Success,
    /// At least one error-severity diagnostic, or a warning under strict mode.
    Findings,
    /// Read or parse failure.
    Failure,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Success => 0,
            ExitStatus::Findings => 1,
            ExitStatus::Failure => 2,
        }
    }
}

/// Report rendering selected by `--format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Structured,
}

/// Input syntax selected by file extension, overridable with `--format-in`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Dfd,
    Json,
}

fn input_format_for(path: &Path, requested: Option<InputFormat>) -> InputFormat {
    requested.unwrap_or_else(|| {
        match path.extension().and_then(|e| e.to_str()) {
            Some("json") => InputFormat::Json,
            _ => InputFormat::Dfd,
        }
    })
}

fn report_parse_errors(path: &Path, errors: &[ParseError], err: &mut dyn Write) {
    for e in errors {
        let _ = writeln!(err, "error: {}:{}: {}", path.display(), e.span, e.message);
    }
}

fn load_project(
    path: &Path,
    requested: Option<InputFormat>,
    err: &mut dyn Write,
) -> Result<Project, ExitStatus> {
    let source = match fs::read_to_string(path) {
        Ok(source) => source,
        Err(io) => {
            let _ = writeln!(err, "error: cannot read '{}': {io}", path.display());
            return Err(ExitStatus::Failure);
        }
    };
    let parsed = match input_format_for(path, requested) {
        InputFormat::Dfd => parse_project(&source),
        InputFormat::Json => from_json(&source),
    };
    parsed.map_err(|errors| {
        report_parse_errors(path, &errors, err);
        ExitStatus::Failure
    })
}

/// Parses a project file, checks it, and renders the report to `out`.
pub fn cmd_validate(
    path: &Path,
    format: ReportFormat,
    strict: bool,
    input: Option<InputFormat>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> ExitStatus {
    let project = match load_project(path, input, err) {
        Ok(project) => project,
        Err(status) => return status,
    };
    let diags = check_project(&project);
    let report = match format {
        ReportFormat::Text => render_text(&diags, project.diagrams.len()),
        ReportFormat::Structured => {
            let mut doc = render_structured(&diags);
            doc.push('\n');
            doc
        }
    };
    let _ = out.write_all(report.as_bytes());

    let has_error = diags.iter().any(|d| d.is_error());
    let has_warning = diags.iter().any(|d| !d.is_error());
    if has_error || (strict && has_warning) {
        ExitStatus::Findings
    } else {
        ExitStatus::Success
    }
}

/// Parses a project file and writes its graph description to `out_path`.
pub fn cmd_export_dot(
    path: &Path,
    out_path: &Path,
    input: Option<InputFormat>,
    err: &mut dyn Write,
) -> ExitStatus {
    let project = match load_project(path, input, err) {
        Ok(project) => project,
        Err(status) => return status,
    };
    let dot = export_dot(&project);
    match fs::write(out_path, dot) {
        Ok(()) => ExitStatus::Success,
        Err(io) => {
            let _ = writeln!(err, "error: cannot write '{}': {io}", out_path.display());
            ExitStatus::Failure
        }
    }
}
