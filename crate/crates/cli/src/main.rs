//! `mcm`: command-line driver for the verification suite.

mod args;
mod output;
mod run;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    if let Ok(threads) = std::env::var("MCM_THREADS") {
        match threads.parse::<usize>() {
            Ok(t) if t > 0 => {
                // fails only if a pool already exists, which cannot happen here
                let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
            }
            _ => {
                eprintln!("error: MCM_THREADS must be a positive integer, got {threads:?}");
                return ExitCode::from(2);
            }
        }
    }
    match run::dispatch(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(run::exit_code_for(&err))
        }
    }
}
