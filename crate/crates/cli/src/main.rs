mod args;
mod commands;
mod config;

use std::process::ExitCode;

use clap::{CommandFactory, Parser};

use args::Cli;

fn main() -> ExitCode {
    let argv = std::env::args_os().collect();
    let argv = match config::apply(argv, &Cli::command()) {
        Ok(a) => a,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(commands::EXIT_PARAMETER);
        }
    };
    let cli = Cli::parse_from(argv);
    let stdout = std::io::stdout();
    match commands::run(cli.command, &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
