use std::process::ExitCode;

use clap::Parser;
use layered_heap_bench::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            // Unreadable inputs and unwritable outputs count as configuration errors too.
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
