use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = mhiggs_cli::Cli::parse();
    let outcome = mhiggs_cli::run(&cli);
    if !outcome.stdout.is_empty() {
        print!("{}", outcome.stdout);
    }
    if let Some(msg) = &outcome.stderr {
        eprintln!("mhiggs: {msg}");
    }
    ExitCode::from(outcome.code)
}
