mod args;
mod commands;
mod config;
mod failure;

use clap::Parser;

use crate::args::Cli;
use crate::config::Context;
use crate::failure::Outcome;

fn start(cli: &Cli) -> Outcome {
    let threads = config::threads(cli.threads);
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| failure::config(e.to_string()))?;
    let ctx = Context {
        resources: config::load_resources(cli.resources.as_deref())?,
        seed: cli.seed,
        threads,
    };
    commands::validate(&cli.command, &ctx)?;
    config::write_sidecar(cli, threads)?;
    commands::run(&cli.command, &ctx)
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = start(&cli) {
        eprintln!("lingcx {}: {e}", cli.command.name());
        std::process::exit(e.code());
    }
}
