use std::process::ExitCode;

use clap::Parser;
use dualmat_cli::{emit, execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let report = execute(&cli, echo);
    ExitCode::from(emit(&cli, &report))
}
