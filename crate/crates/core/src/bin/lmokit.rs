use clap::Parser;
use lmokit::cli::{run, Cli, RunConfig};

fn main() {
    let config = RunConfig::from(Cli::parse());
    let outcome = run(&config);
    print!("{}", outcome.output);
    std::process::exit(outcome.status);
}
