mod args;
mod commands;
mod dataio;
mod error;

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::{Cli, Command};
use crate::error::CliError;

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Simulate(a) => commands::cmd_simulate(a),
        Command::Fit(a) => commands::cmd_fit(a),
        Command::Study(a) => commands::cmd_study(a),
        Command::Bounds(a) => commands::cmd_bounds(a),
        Command::Curve(a) => commands::cmd_curve(a),
    }
}

fn main() {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => match err.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                print!("{err}");
                std::process::exit(0);
            }
            _ => {
                // First line of clap's message, without its own prefix, so
                // every failure mode emits one `error[CODE] ...` line.
                let text = err.to_string();
                let line = text
                    .lines()
                    .next()
                    .unwrap_or("invalid arguments")
                    .trim_start_matches("error: ");
                eprintln!("error[E_USAGE] {line}");
                std::process::exit(2);
            }
        },
    };
    if let Err(err) = run(&cli) {
        eprintln!("error[{}] {err}", err.code());
        std::process::exit(err.exit_code());
    }
}
