mod args;
mod commands;
mod config;
mod error;
mod output;
mod report;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use config::RunConfig;
use error::{CliError, EXIT_CHECK_FAILED, EXIT_OK};

fn run(cli: &Cli) -> Result<bool, CliError> {
    let config = RunConfig::resolve(cli)?;
    log::debug!("resolved configuration: {config:?}");
    match &cli.command {
        Command::Spectrum(_) => commands::run_spectrum(&config, false),
        Command::Bands(_) => commands::run_spectrum(&config, true),
        Command::Wavefunction(_) => commands::run_wavefunction(&config),
        Command::Verify(_) => commands::run_verify(&config),
        Command::Table1(_) => commands::run_table1(&config),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("SCARF_LOG"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::from(EXIT_OK),
        Ok(false) => ExitCode::from(EXIT_CHECK_FAILED),
        Err(e) => {
            eprintln!("scarf: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
