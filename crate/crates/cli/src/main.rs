//! `worldline`: batch front end for the worldline library.

mod commands;
mod config;
mod error;
mod record;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;

use config::{merge, RunConfig};
use error::CliError;
use record::{render, write_output, Format, Record};

/// Environment variable naming the default output directory.
const OUT_DIR_VAR: &str = "WORLDLINE_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "worldline", version, about = "Spacetime-path propagators, amplitudes and loops")]
struct Cli {
    /// JSON run config; flags override its `params`.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file. Defaults to `$WORLDLINE_OUT_DIR/<command>.<format>`, else stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Record the wall time in the output (breaks byte stability).
    #[arg(long, global = true)]
    wall_time: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fixed-length kernel by closed form, collapse or Monte Carlo.
    Kernel(commands::KernelArgs),
    /// Feynman propagator or its on-shell parts.
    Propagator(commands::PropagatorArgs),
    /// λ-evolution of a packet on a lattice.
    Evolve(commands::EvolveArgs),
    /// Energy profile of an on-shell momentum state.
    Onshell(commands::OnshellArgs),
    /// Pairing of multiparticle lattice states.
    Fock(commands::FockArgs),
    /// Tree-level 2 → 2 amplitude.
    Scatter(commands::ScatterArgs),
    /// One-loop self-energy.
    Selfenergy(commands::SelfEnergyArgs),
    /// Threshold scan of the regulated self-energy.
    Scan(commands::ScanArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Kernel(_) => "kernel",
            Command::Propagator(_) => "propagator",
            Command::Evolve(_) => "evolve",
            Command::Onshell(_) => "onshell",
            Command::Fock(_) => "fock",
            Command::Scatter(_) => "scatter",
            Command::Selfenergy(_) => "selfenergy",
            Command::Scan(_) => "scan",
        }
    }
}

fn execute<T>(
    name: &str,
    flags: &T,
    config: &RunConfig,
    op: fn(&T, &mut Record) -> Result<(), CliError>,
) -> Result<Record, CliError>
where
    T: Serialize + DeserializeOwned,
{
    let params: T = merge(&config.params, flags)?;
    let mut inputs = serde_json::to_value(&params).map_err(|e| CliError::Config(e.to_string()))?;
    if let serde_json::Value::Object(map) = &mut inputs {
        map.retain(|_, v| !v.is_null());
    }
    let mut record = Record::new(name, "", inputs);
    op(&params, &mut record)?;
    Ok(record)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let name = cli.command.name();
    if let Some(c) = &config.command {
        if c != name {
            return Err(CliError::Config(format!("config is for `{c}`, not `{name}`")));
        }
    }
    let format = cli.format.or(config.format).unwrap_or_default();
    let output = cli.output.clone().or_else(|| config.output.clone()).or_else(|| {
        std::env::var_os(OUT_DIR_VAR).map(|dir| PathBuf::from(dir).join(format!("{name}.{}", format.extension())))
    });

    let start = Instant::now();
    let mut record = match &cli.command {
        Command::Kernel(a) => execute(name, a, &config, commands::kernel),
        Command::Propagator(a) => execute(name, a, &config, commands::propagator),
        Command::Evolve(a) => execute(name, a, &config, commands::evolve),
        Command::Onshell(a) => execute(name, a, &config, commands::onshell),
        Command::Fock(a) => execute(name, a, &config, commands::fock),
        Command::Scatter(a) => execute(name, a, &config, commands::scatter),
        Command::Selfenergy(a) => execute(name, a, &config, commands::selfenergy),
        Command::Scan(a) => execute(name, a, &config, commands::scan),
    }?;
    if cli.wall_time {
        record.wall_time_s = Some(start.elapsed().as_secs_f64());
    }
    let text = render(&record, format)?;
    match output {
        Some(path) => write_output(&path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main_with(args: impl IntoIterator<Item = OsString>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn main() {
    std::process::exit(main_with(std::env::args_os()));
}
