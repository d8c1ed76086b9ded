//! Batch front-end over the benchmark suites: generation, validation,
//! statistics, and baseline solving against the shared directory layout.

mod config;
mod run;

use clap::Parser;

use crate::config::{is_positional, Cli, RunConfig};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let config = if is_positional(&args) {
        match RunConfig::from_positional(&args) {
            Ok(config) => config,
            Err(message) => {
                eprintln!("error: {message}");
                std::process::exit(2);
            }
        }
    } else {
        RunConfig::from_cli(Cli::parse())
    };

    match run::run(&config) {
        Ok(code) => std::process::exit(code),
        Err(error) => {
            eprintln!("error: {error:#}");
            std::process::exit(1);
        }
    }
}
