//! Batch driver for the `bethe-core` verification scenarios: configuration,
//! reports, CSV export and the exit-code contract.

pub mod algebra;
pub mod characters;
pub mod config;
pub mod report;
pub mod spectrum;

use std::path::Path;

use config::Run;
use report::Report;

/// Exit code for configuration errors.
pub const EXIT_CONFIG: i32 = 64;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] bethe_core::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(_) => 1,
            _ => EXIT_CONFIG,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::Subcommand)]
pub enum Command {
    /// Exact identities of the Yangian action and the transfer matrices.
    VerifyAlgebra,
    /// Bethe ansatz solutions, Bethe vectors and eigenvalues.
    Spectrum,
    /// Points of the Wronski fiber attached to each solution.
    Fiber,
    /// Graded characters of the invariants against the closed formulas.
    Characters,
    /// Every command above.
    All,
}

/// Runs one command; `csv` receives the spectrum table when given.
pub fn run_command(command: Command, run: &Run, csv: Option<&Path>) -> Result<Report, CliError> {
    match command {
        Command::VerifyAlgebra => algebra::verify_algebra(run),
        Command::Spectrum => spectrum::spectrum(run, csv),
        Command::Fiber => spectrum::fiber(run),
        Command::Characters => characters::characters(run),
        Command::All => {
            // the identity and character suites are exact whatever the mode
            let exact = Run { mode: config::Mode::Exact, ..run.clone() };
            let parts = vec![
                algebra::verify_algebra(&exact)?,
                spectrum::spectrum(run, csv)?,
                spectrum::fiber(run)?,
                characters::characters(&exact)?,
            ];
            Ok(Report::merge("all", parts))
        }
    }
}

/// Installs the global thread pool from `BETHE_THREADS`, if set.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("BETHE_THREADS") else { return Ok(()) };
    let n: usize = value.parse().map_err(|_| CliError::Config(format!("BETHE_THREADS={value:?} is not a count")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(e.to_string()))
}
