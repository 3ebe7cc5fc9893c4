mod commands;
mod config;
mod dataset;
mod error;
mod output;
mod validate;

use clap::error::ErrorKind;
use clap::Parser;

use config::{Cli, Command};
use error::CliError;

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Ecor(args) => commands::run_ecor(args),
        Command::Dcor(args) => commands::run_dcor(args),
        Command::Wasserstein(args) => commands::run_wasserstein(args),
        Command::Transport(args) => commands::run_transport(args),
        Command::TestIndependence(args) => commands::run_test_independence(args),
        Command::Validate(args) => commands::run_validate(args),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are not usage errors
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                std::process::exit(0);
            }
            eprint!("{e}");
            std::process::exit(1);
        }
    };
    if let Err(e) = run(&cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
