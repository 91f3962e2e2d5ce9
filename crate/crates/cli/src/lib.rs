//! Library side of the `unisets` binary: argument parsing, the three
//! subcommands and the run report.

pub mod args;
pub mod commands;
pub mod report;

use std::io::Write;

use clap::Parser;

pub use report::RunReport;

/// Exit statuses.
pub mod exit {
    pub const VERIFIED: u8 = 0;
    pub const SAMPLED_ONLY: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const VERIFICATION_FAILED: u8 = 3;
    pub const CONSTRUCTION_FAILED: u8 = 4;
}

/// Parses `argv`, runs the command and prints the report. Returns the exit
/// status.
pub fn main_with(argv: &[String]) -> u8 {
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit::USAGE } else { exit::VERIFIED };
        }
    };
    match commands::run(&cli) {
        Ok(report) => {
            let text = match cli.format {
                args::Format::Json => {
                    serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
                }
                args::Format::Text => report.to_text(),
            };
            let _ = std::io::stdout().write_all(text.as_bytes());
            report.exit_code
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
