use std::process::ExitCode;

use a4csl_cli::{run, Cli, CliError};
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            match &e {
                CliError::Partial { output, .. } | CliError::SelftestFailed { output } => print!("{output}"),
                _ => {}
            }
            eprintln!("a4csl: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
