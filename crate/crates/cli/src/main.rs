//! Command-line front end for the oscillator library.
//!
//! Exit status is 0 on success, 1 when a `verify` check fails and 2 on any
//! error. Errors are reported on stderr as one JSON line
//! `{"error": <code>, "message": <text>}`.

mod commands;
mod config;
mod log;
mod source;
mod times;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use oscillator::Error;
use serde_json::json;

use crate::config::{Backend, RunConfig};
use crate::log::Log;
use crate::source::Source;

#[derive(Debug, Parser)]
#[command(name = "oscillator", version, about = "Evolve one-dimensional harmonic-oscillator wave functions")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Reduced Planck constant.
    #[arg(long, global = true)]
    hbar: Option<f64>,
    #[arg(long, global = true)]
    mass: Option<f64>,
    /// Angular frequency.
    #[arg(long, global = true)]
    omega: Option<f64>,
    /// Grid half extent in units of the oscillator length α.
    #[arg(long, global = true)]
    extent: Option<f64>,
    /// Number of grid points.
    #[arg(long, global = true)]
    points: Option<usize>,
    /// Highest eigenmode of the spectral basis.
    #[arg(long, global = true)]
    nmax: Option<usize>,
    #[arg(long, global = true, value_enum)]
    backend: Option<Backend>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// Spectral truncation tolerance on the projection residual.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Flat `key = value` file with the same keys; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

impl GlobalArgs {
    fn run_config(&self) -> Result<RunConfig, Error> {
        let file = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        Ok(file.overridden_by(RunConfig {
            hbar: self.hbar,
            mass: self.mass,
            omega: self.omega,
            extent: self.extent,
            points: self.points,
            nmax: self.nmax,
            backend: self.backend,
            seed: self.seed,
            out_dir: self.out_dir.clone(),
            tolerance: self.tolerance,
        }))
    }
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Named scenario (see `demo`).
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    demo: Option<String>,
    /// Wave file in the JSON wave format.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Treat the input as kinked: looser truncation and edge-mass limits.
    #[arg(long)]
    kink: bool,
}

impl InputArgs {
    fn source(&self) -> Result<Source, Error> {
        Source::from_args(self.demo.as_deref(), self.input.as_deref())
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the evolved wave at each requested time.
    Evolve {
        #[command(flatten)]
        input: InputArgs,
        /// Times such as `0:T/4:9`, `3T/16` or `0,T/8,T/4`; `T` is the period.
        #[arg(long)]
        times: String,
    },
    /// Write the moment time series as CSV.
    Moments {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "0:2T:129")]
        times: String,
    },
    /// Reduce the state to its stable form and report the constants.
    Stable {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Run the invariant checks.
    Verify,
    /// List the named scenarios, or write the initial state of one.
    Demo { name: Option<String> },
}

fn run(cli: &Cli) -> Result<bool, Error> {
    let cfg = cli.global.run_config()?;
    let mut log = Log::stdout();
    match &cli.command {
        Command::Evolve { input, times } => {
            commands::evolve(&cfg, &input.source()?, input.kink, times, &mut log)?;
        }
        Command::Moments { input, times } => {
            commands::moments(&cfg, &input.source()?, input.kink, times, &mut log)?;
        }
        Command::Stable { input } => {
            commands::stable(&cfg, &input.source()?, input.kink, &mut log)?;
        }
        Command::Verify => return verify::verify(&cfg, &mut log),
        Command::Demo { name } => {
            commands::demo(&cfg, name.as_deref(), &mut log)?;
        }
    }
    Ok(true)
}

fn report(code: &str, message: &str) -> ExitCode {
    eprintln!("{}", json!({ "error": code, "message": message }));
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return report("usage-error", e.render().to_string().trim()),
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => report(e.code(), &e.to_string()),
    }
}
