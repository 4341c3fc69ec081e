use std::path::PathBuf;
use std::process;

use bethe_cli::config::{Mode, RunConfig};
use bethe_cli::{configure_threads, run_command, CliError, Command, EXIT_CONFIG};
use clap::error::ErrorKind;
use clap::Parser;

/// Verification runs for Bethe algebras of the gl_N XXX model.
#[derive(Debug, Parser)]
#[command(name = "bethe", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Report destination; overrides `output` in the configuration.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Overrides `mode` in the configuration.
    #[arg(long, global = true, value_enum)]
    mode: Option<Mode>,
    /// CSV file receiving the Bethe roots of `spectrum`.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
}

fn execute(cli: &Cli) -> Result<i32, CliError> {
    configure_threads()?;
    let path = cli.config.as_ref().ok_or_else(|| CliError::Config("--config is required".into()))?;
    let mut config = RunConfig::load(path)?;
    if let Some(mode) = cli.mode {
        config.mode = mode;
    }
    let run = config.validate()?;
    let report = run_command(cli.command, &run, cli.csv.as_deref())?;
    let text = report.to_json();
    match cli.out.clone().or_else(|| run.output.as_ref().map(PathBuf::from)) {
        Some(out) => std::fs::write(out, text)?,
        None => print!("{text}"),
    }
    Ok(report.exit_code())
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_CONFIG,
            };
            let _ = e.print();
            process::exit(code);
        }
    };
    let code = execute(&cli).unwrap_or_else(|e| {
        eprintln!("bethe: {e}");
        e.exit_code()
    });
    process::exit(code);
}
