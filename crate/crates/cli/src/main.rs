mod commands;
mod input;
mod repl;

use std::process::ExitCode;

use clap::Parser;

use commands::{Cli, Failure};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut session = input::Session::default();
    match commands::run(&cli, &mut session) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(Failure::Invalid(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Discrepancy(msg)) => {
            eprintln!("discrepancy: {msg}");
            ExitCode::from(2)
        }
    }
}
