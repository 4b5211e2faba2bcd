use std::process::ExitCode;

use clap::Parser;
use trunckit_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = execute(&cli);
    if let Some(message) = &report.diagnostic {
        eprintln!("error: {message}");
    }
    if cli.json {
        println!("{}", report.to_json());
    } else {
        for line in &report.text {
            println!("{line}");
        }
    }
    ExitCode::from(report.exit_code() as u8)
}
