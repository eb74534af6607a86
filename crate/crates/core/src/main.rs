use clap::Parser;
use sntrank::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let out = run(&cli.into_command());
    print!("{}", out.stdout);
    std::process::exit(out.code);
}
