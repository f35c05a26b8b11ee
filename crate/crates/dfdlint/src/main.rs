use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dfdlint::cli::{cmd_export_dot, cmd_validate, InputFormat, ReportFormat};

/// Lints hierarchical data-flow-diagram projects: per-diagram syntax rules
/// and cross-level consistency between each process and its decomposition.
#[derive(Parser)]
#[command(name = "dfdlint", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a project file and print the error list.
    Validate {
        /// Project file (.dfd text or .json canonical document).
        file: PathBuf,
        /// Report rendering.
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
        /// Treat warnings as findings for the exit code.
        #[arg(long)]
        strict: bool,
        /// Override the input format chosen by file extension.
        #[arg(long = "format-in", value_enum)]
        format_in: Option<InputFormat>,
    },
    /// Export a project as Graphviz graphs, one digraph per diagram.
    Export {
        /// Project file (.dfd text or .json canonical document).
        file: PathBuf,
        /// Select DOT output (the only export format).
        #[arg(long, required = true)]
        dot: bool,
        /// Output file.
        #[arg(short, long = "out")]
        out: PathBuf,
        /// Override the input format chosen by file extension.
        #[arg(long = "format-in", value_enum)]
        format_in: Option<InputFormat>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout();
    let mut stderr = std::io::stderr();
    let status = match cli.command {
        Command::Validate {
            file,
            format,
            strict,
            format_in,
        } => cmd_validate(&file, format, strict, format_in, &mut stdout, &mut stderr),
        Command::Export {
            file,
            dot: _,
            out,
            format_in,
        } => cmd_export_dot(&file, &out, format_in, &mut stderr),
    };
    ExitCode::from(status.code() as u8)
}
